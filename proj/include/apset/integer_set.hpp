#pragma once

/// @file integer_set.hpp
/// @brief IntegerSet: a truncation of an integer set to [1, x] stored as a
///        packed bit vector with an exact element count, plus the boolean
///        set algebra and (de)serialization.

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace apset {

/// Finite truncation N ∩ [1, x]. Bit n of the word array is set iff n is a
/// member; bit 0 is always clear. Immutable after construction, so instances
/// are safe to share across threads for reading.
class IntegerSet {
public:
    /// Builds from a packed word array. Bits above `limit` (and bit 0) must
    /// be clear; the count is recomputed from the words.
    IntegerSet(std::uint64_t limit, std::vector<std::uint64_t> words)
        : limit_(limit), words_(std::move(words)) {
        if (limit_ == 0) throw std::invalid_argument("IntegerSet limit must be positive");
        std::size_t need = word_count(limit_);
        if (words_.size() != need)
            throw std::invalid_argument("IntegerSet word array has wrong length");
        if (words_[0] & 1u)
            throw std::invalid_argument("IntegerSet bit 0 must be clear");
        std::uint32_t top_bits = static_cast<std::uint32_t>((limit_ + 1) % 64);
        if (top_bits != 0 && (words_.back() >> top_bits) != 0)
            throw std::invalid_argument("IntegerSet has bits beyond its limit");
        count_ = 0;
        for (std::uint64_t w : words_) count_ += static_cast<std::uint64_t>(std::popcount(w));
    }

    /// Convenience ctor from an explicit element list.
    static IntegerSet from_elements(std::uint64_t limit,
                                    const std::vector<std::uint64_t>& elems) {
        std::vector<std::uint64_t> words(word_count(limit), 0);
        for (std::uint64_t n : elems) {
            if (n < 1 || n > limit)
                throw std::out_of_range("element outside [1, limit]");
            words[n >> 6] |= std::uint64_t(1) << (n & 63);
        }
        return IntegerSet(limit, std::move(words));
    }

    std::uint64_t limit() const { return limit_; }
    std::uint64_t count() const { return count_; }

    bool contains(std::uint64_t n) const {
        if (n < 1 || n > limit_)
            throw std::out_of_range("IntegerSet::contains: index outside [1, limit]");
        return (words_[n >> 6] >> (n & 63)) & 1u;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    std::vector<std::uint64_t> elements() const {
        std::vector<std::uint64_t> out;
        out.reserve(count_);
        for_each([&](std::uint64_t n) { out.push_back(n); });
        return out;
    }

    /// Calls fn(n) for every member in increasing order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w != 0) {
                unsigned b = static_cast<unsigned>(std::countr_zero(w));
                fn(static_cast<std::uint64_t>(i) * 64 + b);
                w &= w - 1;
            }
        }
    }

    static std::size_t word_count(std::uint64_t limit) {
        return static_cast<std::size_t>((limit + 1 + 63) / 64);
    }

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> words_;
    std::uint64_t count_ = 0;
};

/// Empirical density count/x at the truncation point.
inline double density(const IntegerSet& a) {
    return static_cast<double>(a.count()) / static_cast<double>(a.limit());
}

inline IntegerSet intersect(const IntegerSet& a, const IntegerSet& b) {
    if (a.limit() != b.limit())
        throw std::invalid_argument("intersect: mismatched limits");
    std::vector<std::uint64_t> w(a.words());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] &= b.words()[i];
    return IntegerSet(a.limit(), std::move(w));
}

inline IntegerSet set_union(const IntegerSet& a, const IntegerSet& b) {
    if (a.limit() != b.limit())
        throw std::invalid_argument("set_union: mismatched limits");
    std::vector<std::uint64_t> w(a.words());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= b.words()[i];
    return IntegerSet(a.limit(), std::move(w));
}

inline IntegerSet complement(const IntegerSet& a) {
    std::vector<std::uint64_t> w(a.words());
    for (auto& word : w) word = ~word;
    w[0] &= ~std::uint64_t(1);                       // keep bit 0 clear
    std::uint32_t top_bits = static_cast<std::uint32_t>((a.limit() + 1) % 64);
    if (top_bits != 0) w.back() &= (std::uint64_t(1) << top_bits) - 1;
    return IntegerSet(a.limit(), std::move(w));
}

/// Restriction to [1, new_limit]; new_limit must not exceed the current one.
inline IntegerSet truncate(const IntegerSet& a, std::uint64_t new_limit) {
    if (new_limit == 0 || new_limit > a.limit())
        throw std::invalid_argument("truncate: new limit outside [1, limit]");
    std::vector<std::uint64_t> w(a.words().begin(),
                                 a.words().begin() + IntegerSet::word_count(new_limit));
    std::uint32_t top_bits = static_cast<std::uint32_t>((new_limit + 1) % 64);
    if (top_bits != 0) w.back() &= (std::uint64_t(1) << top_bits) - 1;
    return IntegerSet(new_limit, std::move(w));
}

// --- serialization ---------------------------------------------------------
//
// Binary layout: magic "APSB", u32 version (currently 1), u64 limit, then the
// packed word array. All integers little-endian regardless of host order.

namespace detail {

inline void put_u32_le(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
}

inline void put_u64_le(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

inline std::uint32_t get_u32_le(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("set file truncated");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

inline std::uint64_t get_u64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("set file truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

} // namespace detail

inline void write_set_binary(std::ostream& out, const IntegerSet& a) {
    out.write("APSB", 4);
    detail::put_u32_le(out, 1);
    detail::put_u64_le(out, a.limit());
    for (std::uint64_t w : a.words()) detail::put_u64_le(out, w);
    if (!out) throw std::runtime_error("failed writing set");
}

inline IntegerSet read_set_binary(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "APSB", 4) != 0)
        throw std::runtime_error("not a set file (bad magic)");
    std::uint32_t version = detail::get_u32_le(in);
    if (version != 1)
        throw std::runtime_error("unsupported set file version " + std::to_string(version));
    std::uint64_t limit = detail::get_u64_le(in);
    if (limit == 0 || limit > (std::uint64_t(1) << 40))
        throw std::runtime_error("set file limit out of range");
    std::vector<std::uint64_t> words(IntegerSet::word_count(limit));
    for (auto& w : words) w = detail::get_u64_le(in);
    return IntegerSet(limit, std::move(words));
}

/// Textual form for small sets: "x <limit>" then one element per line.
inline void write_set_text(std::ostream& out, const IntegerSet& a) {
    out << "x " << a.limit() << "\n";
    a.for_each([&](std::uint64_t n) { out << n << "\n"; });
    if (!out) throw std::runtime_error("failed writing set");
}

inline IntegerSet read_set_text(std::istream& in) {
    std::string tag;
    std::uint64_t limit = 0;
    if (!(in >> tag >> limit) || tag != "x")
        throw std::runtime_error("not a textual set file (expected \"x <limit>\")");
    std::vector<std::uint64_t> elems;
    std::uint64_t n;
    while (in >> n) elems.push_back(n);
    return IntegerSet::from_elements(limit, elems);
}

} // namespace apset
