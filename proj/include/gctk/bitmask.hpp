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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace gctk {

/// Fixed-width bit vector over n positions. One machine word covers n <= 64;
/// wider masks spill into additional words. Used for vertex sets, sign rows
/// (bit set = sign -1) and qubit flip masks.
class Bitmask {
  public:
    Bitmask() : n_(0) {}
    explicit Bitmask(int n);
    static Bitmask with_bits(int n, std::initializer_list<int> bits);
    static Bitmask with_bits(int n, const std::vector<int>& bits);
    static Bitmask full(int n);

    int width() const { return n_; }
    bool test(int i) const;
    void set(int i, bool value = true);
    int count() const;
    bool none() const;
    bool all() const;

    /// Bitwise complement within the n-bit window.
    Bitmask complement() const;
    Bitmask operator^(const Bitmask& o) const;
    Bitmask operator&(const Bitmask& o) const;
    Bitmask operator|(const Bitmask& o) const;

    bool operator==(const Bitmask& o) const = default;
    /// Numeric order of the represented integer (bit i has weight 2^i).
    static int compare_value(const Bitmask& a, const Bitmask& b);
    bool operator<(const Bitmask& o) const { return compare_value(*this, o) < 0; }

    bool is_subset_of(const Bitmask& o) const;
    std::vector<int> bits() const;
    int lowest_bit() const;  // -1 when empty

    /// Lowercase hex of the represented integer, no prefix ("0" when empty).
    std::string to_hex() const;
    static Bitmask from_hex(int n, const std::string& hex);

    uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

  private:
    int n_;
    std::vector<uint64_t> words_;
    void check_index(int i) const;
};

}  // namespace gctk
