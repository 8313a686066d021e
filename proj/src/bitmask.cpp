// Copyright 2026 The gctk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gctk/bitmask.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "gctk/errors.hpp"

namespace gctk {

namespace {
int word_count(int n) { return (n + 63) / 64; }

uint64_t top_word_mask(int n) {
    const int rem = n % 64;
    return rem == 0 ? ~0ULL : ((1ULL << rem) - 1);
}
}  // namespace

Bitmask::Bitmask(int n) : n_(n), words_(word_count(n), 0) {
    if (n < 0) throw InvalidParameter("negative bitmask width");
}

Bitmask Bitmask::with_bits(int n, std::initializer_list<int> bits) {
    Bitmask m(n);
    for (int b : bits) m.set(b);
    return m;
}

Bitmask Bitmask::with_bits(int n, const std::vector<int>& bits) {
    Bitmask m(n);
    for (int b : bits) m.set(b);
    return m;
}

Bitmask Bitmask::full(int n) {
    Bitmask m(n);
    for (auto& w : m.words_) w = ~0ULL;
    if (!m.words_.empty()) m.words_.back() &= top_word_mask(n);
    return m;
}

void Bitmask::check_index(int i) const {
    if (i < 0 || i >= n_) throw InvalidParameter("bit index out of range");
}

bool Bitmask::test(int i) const {
    check_index(i);
    return (words_[i / 64] >> (i % 64)) & 1ULL;
}

void Bitmask::set(int i, bool value) {
    check_index(i);
    if (value)
        words_[i / 64] |= 1ULL << (i % 64);
    else
        words_[i / 64] &= ~(1ULL << (i % 64));
}

int Bitmask::count() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
}

bool Bitmask::none() const {
    return std::all_of(words_.begin(), words_.end(), [](uint64_t w) { return w == 0; });
}

bool Bitmask::all() const { return count() == n_; }

Bitmask Bitmask::complement() const {
    Bitmask m(n_);
    for (size_t i = 0; i < words_.size(); ++i) m.words_[i] = ~words_[i];
    if (!m.words_.empty()) m.words_.back() &= top_word_mask(n_);
    return m;
}

#define GCTK_BITWISE_OP(op)                                                   \
    Bitmask Bitmask::operator op(const Bitmask& o) const {                    \
        if (n_ != o.n_) throw DimensionMismatch("bitmask widths differ");     \
        Bitmask m(n_);                                                        \
        for (size_t i = 0; i < words_.size(); ++i)                            \
            m.words_[i] = words_[i] op o.words_[i];                           \
        return m;                                                             \
    }
GCTK_BITWISE_OP(^)
GCTK_BITWISE_OP(&)
GCTK_BITWISE_OP(|)
#undef GCTK_BITWISE_OP

int Bitmask::compare_value(const Bitmask& a, const Bitmask& b) {
    if (a.n_ != b.n_) throw DimensionMismatch("bitmask widths differ");
    for (size_t i = a.words_.size(); i-- > 0;) {
        if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i] ? -1 : 1;
    }
    return 0;
}

bool Bitmask::is_subset_of(const Bitmask& o) const {
    if (n_ != o.n_) throw DimensionMismatch("bitmask widths differ");
    for (size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

std::vector<int> Bitmask::bits() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
        if (test(i)) out.push_back(i);
    return out;
}

int Bitmask::lowest_bit() const {
    for (size_t w = 0; w < words_.size(); ++w)
        if (words_[w] != 0) return static_cast<int>(w) * 64 + std::countr_zero(words_[w]);
    return -1;
}

std::string Bitmask::to_hex() const {
    std::string out;
    bool leading = true;
    for (size_t i = words_.size(); i-- > 0;) {
        for (int nib = 15; nib >= 0; --nib) {
            const int v = (words_[i] >> (4 * nib)) & 0xF;
            if (leading && v == 0) continue;
            leading = false;
            out.push_back("0123456789abcdef"[v]);
        }
    }
    return out.empty() ? "0" : out;
}

Bitmask Bitmask::from_hex(int n, const std::string& hex) {
    if (hex.empty()) throw ParseError("empty hex mask");
    Bitmask m(n);
    int bitpos = 0;
    for (size_t i = hex.size(); i-- > 0;) {
        const char c = static_cast<char>(std::tolower(hex[i]));
        int v;
        if (c >= '0' && c <= '9')
            v = c - '0';
        else if (c >= 'a' && c <= 'f')
            v = c - 'a' + 10;
        else
            throw ParseError(std::string("bad hex digit '") + hex[i] + "'");
        for (int b = 0; b < 4; ++b, ++bitpos) {
            if ((v >> b) & 1) {
                if (bitpos >= n) throw ParseError("hex mask wider than " + std::to_string(n) + " bits");
                m.set(bitpos);
            }
        }
    }
    return m;
}

}  // namespace gctk
