#ifndef STATKIT_RNG_HPP
#define STATKIT_RNG_HPP

// Counter-based pseudo-random streams. A stream is addressed by a key
// (derived from a user seed plus arbitrary integer tags) and a draw index;
// value(key, i) is a pure function, so results are identical across
// platforms and independent of scheduling or worker count.

#include <cstdint>
#include <initializer_list>

namespace statkit {

namespace detail {

inline constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Derive a stream key from a seed and a list of tags (experiment id,
/// sample size, replicate index, ...). Order of tags is significant.
inline std::uint64_t stream_key(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> tags = {}) {
    std::uint64_t k = detail::mix64(seed + detail::golden);
    for (std::uint64_t t : tags) k = detail::mix64(k ^ (t + detail::golden));
    return k;
}

/// i-th 64-bit word of the stream addressed by key.
inline std::uint64_t stream_bits(std::uint64_t key, std::uint64_t index) {
    return detail::mix64(key + index * detail::golden);
}

/// i-th uniform variate of the stream, strictly inside (0, 1).
inline double stream_u01(std::uint64_t key, std::uint64_t index) {
    return (static_cast<double>(stream_bits(key, index) >> 11) + 0.5) *
           (1.0 / 9007199254740992.0); // 2^-53
}

/// Stateful view over one counter-based stream; copying is cheap and the
/// generator never touches shared state.
class CounterStream {
public:
    explicit CounterStream(std::uint64_t key, std::uint64_t start = 0)
        : key_(key), index_(start) {}

    double next_u01() { return stream_u01(key_, index_++); }
    std::uint64_t next_bits() { return stream_bits(key_, index_++); }

    std::uint64_t key() const { return key_; }
    std::uint64_t index() const { return index_; }

private:
    std::uint64_t key_;
    std::uint64_t index_;
};

} // namespace statkit

#endif
