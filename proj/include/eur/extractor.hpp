// Copyright 2026 The eurqrng Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Privacy amplification by Toeplitz hashing over GF(2), the trace-distance
// bound it achieves, and raw/hex serialization of outputs and seeds.
//
// Bit vectors are std::vector<std::uint8_t> holding one bit (0 or 1) per
// element. Serialized form packs bit i into byte i/8 at position i%8
// (little-endian bit order within bytes).

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "eur/entmath.hpp"
#include "eur/errors.hpp"
#include "eur/rng.hpp"

namespace eur {

using BitVector = std::vector<std::uint8_t>;

/// Seed of an ell x n_in Toeplitz matrix: T[j][k] = bits[j - k + n_in - 1].
struct ToeplitzSeed {
    BitVector bits;
    std::uint64_t n_in = 0;
    std::uint64_t ell = 0;

    void validate() const {
        detail::require(ell >= 1, "ToeplitzSeed: output length must be >= 1");
        detail::require(n_in >= ell, "ToeplitzSeed: input length must be >= output length");
        detail::require(bits.size() == n_in + ell - 1, "ToeplitzSeed: seed length must be n_in + ell - 1");
        for (auto b : bits) {
            detail::require(b <= 1, "ToeplitzSeed: seed entries must be bits");
        }
    }

    static ToeplitzSeed random(std::uint64_t n_in, std::uint64_t ell, Rng &rng) {
        ToeplitzSeed s{BitVector(n_in + ell - 1), n_in, ell};
        for (auto &b : s.bits) {
            b = rng.bit() ? 1 : 0;
        }
        s.validate();
        return s;
    }
};

namespace detail {

inline std::vector<std::uint64_t> pack_words(std::span<const std::uint8_t> bits, std::size_t extra_words = 0) {
    std::vector<std::uint64_t> words((bits.size() + 63) / 64 + extra_words, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        words[i >> 6] |= std::uint64_t{bits[i] & 1u} << (i & 63);
    }
    return words;
}

}  // namespace detail

/// out_j = XOR_k T[j][k] in_k.
inline BitVector toeplitz_hash(std::span<const std::uint8_t> input, const ToeplitzSeed &seed) {
    seed.validate();
    detail::require(input.size() == seed.n_in, "toeplitz_hash: input length does not match seed");
    // Reversing the input turns row j into the seed window [j, j + n_in):
    // T[j][k] in_k = bits[j + r] rev_r with r = n_in - 1 - k.
    BitVector reversed(input.rbegin(), input.rend());
    for (auto b : reversed) {
        detail::require(b <= 1, "toeplitz_hash: input entries must be bits");
    }
    const auto x = detail::pack_words(reversed);
    const auto s = detail::pack_words(seed.bits, 1);
    BitVector out(seed.ell);
    for (std::uint64_t j = 0; j < seed.ell; ++j) {
        const std::uint64_t word = j >> 6;
        const unsigned shift = j & 63;
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < x.size(); ++w) {
            std::uint64_t window = s[word + w] >> shift;
            if (shift != 0) {
                window |= s[word + w + 1] << (64 - shift);
            }
            acc ^= window & x[w];
        }
        out[j] = static_cast<std::uint8_t>(std::popcount(acc) & 1);
    }
    return out;
}

/// min(1, 2^(-(h_min - ell)/2) + 2 eps): distance from uniform after hashing
/// a source with (smooth) min-entropy h_min down to ell bits.
inline double pa_distance_bound(double h_min, double ell, double epsilon) {
    detail::require(epsilon >= 0.0 && epsilon < 1.0, "pa_distance_bound: epsilon must lie in [0, 1)");
    return std::min(1.0, std::exp2(-0.5 * (h_min - ell)) + 2.0 * epsilon);
}

/// Bits per symbol in the fixed-width encoding: ceil(log2 d).
inline unsigned symbol_width(std::uint32_t d) { return static_cast<unsigned>(std::bit_width(d - 1)); }

/// Fixed-width big-endian encoding of each symbol.
inline BitVector encode_symbols(const DString &raw) {
    const unsigned width = symbol_width(raw.alphabet());
    BitVector bits;
    bits.reserve(raw.size() * width);
    for (auto s : raw.symbols()) {
        for (unsigned b = width; b-- > 0;) {
            bits.push_back(static_cast<std::uint8_t>((s >> b) & 1u));
        }
    }
    return bits;
}

struct Extraction {
    BitVector output;
    ToeplitzSeed seed;  // empty bits when ell == 0
};

/// Encodes raw to bits, draws a uniform Toeplitz seed and hashes down to ell bits.
inline Extraction extract(const DString &raw, std::uint64_t ell, Rng &rng) {
    const double capacity = static_cast<double>(raw.size()) * std::log2(static_cast<double>(raw.alphabet()));
    detail::require(static_cast<double>(ell) <= capacity + 1e-9,
                    "extract: cannot extract more bits than the raw string holds");
    const BitVector bits = encode_symbols(raw);
    if (ell == 0) {
        return {{}, ToeplitzSeed{{}, bits.size(), 0}};
    }
    auto seed = ToeplitzSeed::random(bits.size(), ell, rng);
    auto out = toeplitz_hash(bits, seed);
    return {std::move(out), std::move(seed)};
}

/// Packs bits little-endian within bytes.
inline std::vector<std::uint8_t> pack_bytes(std::span<const std::uint8_t> bits) {
    std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        bytes[i / 8] |= static_cast<std::uint8_t>((bits[i] & 1u) << (i % 8));
    }
    return bytes;
}

inline BitVector unpack_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
    detail::require(nbits <= bytes.size() * 8, "unpack_bytes: not enough bytes");
    BitVector bits(nbits);
    for (std::size_t i = 0; i < nbits; ++i) {
        bits[i] = (bytes[i / 8] >> (i % 8)) & 1u;
    }
    return bits;
}

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 15]);
    }
    return s;
}

inline std::vector<std::uint8_t> from_hex(const std::string &hex) {
    detail::require(hex.size() % 2 == 0, "from_hex: odd number of digits");
    auto value = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw DomainError("from_hex: invalid digit");
    };
    std::vector<std::uint8_t> bytes(hex.size() / 2);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        bytes[i] = static_cast<std::uint8_t>(value(hex[2 * i]) << 4 | value(hex[2 * i + 1]));
    }
    return bytes;
}

/// Seed sidecar text: n_in, ell, bit count and the packed seed as hex.
inline std::string seed_to_text(const ToeplitzSeed &seed) {
    std::ostringstream os;
    os << "# toeplitz seed; T[j][k] = bits[j - k + n_in - 1]; bits packed little-endian within bytes\n"
       << "n_in=" << seed.n_in << "\n"
       << "ell=" << seed.ell << "\n"
       << "bits=" << seed.bits.size() << "\n"
       << "hex=" << to_hex(pack_bytes(seed.bits)) << "\n";
    return os.str();
}

inline ToeplitzSeed seed_from_text(const std::string &text) {
    std::istringstream is(text);
    std::string line;
    ToeplitzSeed seed;
    std::uint64_t nbits = 0;
    std::string hex;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        detail::require(eq != std::string::npos, "seed_from_text: malformed line");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "n_in") {
            seed.n_in = std::stoull(value);
        } else if (key == "ell") {
            seed.ell = std::stoull(value);
        } else if (key == "bits") {
            nbits = std::stoull(value);
        } else if (key == "hex") {
            hex = value;
        }
    }
    seed.bits = unpack_bytes(from_hex(hex), nbits);
    if (seed.ell > 0) {
        seed.validate();
    }
    return seed;
}

/// Writes packed output bits to `bits_path` and the seed sidecar to
/// `bits_path` + ".seed.hex".
inline void write_extraction(const std::string &bits_path, const Extraction &ex) {
    const auto bytes = pack_bytes(ex.output);
    std::ofstream bin(bits_path, std::ios::binary);
    if (!bin) {
        throw std::runtime_error("cannot open " + bits_path);
    }
    bin.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    std::ofstream hex(bits_path + ".seed.hex");
    if (!hex) {
        throw std::runtime_error("cannot open " + bits_path + ".seed.hex");
    }
    hex << seed_to_text(ex.seed);
}

}  // namespace eur
