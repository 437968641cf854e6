#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <thread>
#include <vector>

#include "born.hpp"
#include "errors.hpp"
#include "random.hpp"

// Planar hidden-variable model of a spin-1/2 component: an angle phi uniform
// on the circle, and theta_a = sign(cos(a - phi)) for a direction a.
namespace qdt::spin {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline double normalize_angle(double radians) {
    double x = std::fmod(radians, two_pi);
    if (x < 0.0)
        x += two_pi;
    if (x >= two_pi)
        x = 0.0;
    return x;
}

inline double degrees(double deg) { return deg * std::numbers::pi / 180.0; }

struct Direction {
    double angle = 0.0;

    Direction() = default;
    explicit Direction(double radians) : angle(normalize_angle(radians)) {}
    static Direction from_degrees(double deg) { return Direction(degrees(deg)); }
};

struct PhiSample {
    double angle = 0.0;

    PhiSample() = default;
    explicit PhiSample(double radians) : angle(normalize_angle(radians)) {}
};

/// Angle between two directions, in [0, pi].
inline double angular_separation(Direction a, Direction b) {
    const double d = normalize_angle(a.angle - b.angle);
    return d > std::numbers::pi ? two_pi - d : d;
}

/// sign(cos(a - phi)), with +1 on the measure-zero boundary.
inline int spin_component(Direction a, PhiSample phi) { return std::cos(a.angle - phi.angle) >= 0.0 ? 1 : -1; }

/// Reflection of phi about the midline of a and b: (a + b) - phi. It carries
/// the half-circle where theta_a = +1 onto the one where theta_b = +1.
inline PhiSample midline_reflection(PhiSample phi, Direction a, Direction b) {
    return PhiSample(a.angle + b.angle - phi.angle);
}

/// Work is split into fixed-size chunks; chunk c draws from stream c of the
/// seed, so results depend on (seed, n, chunk_size) and not on `threads`.
struct SamplingOptions {
    std::size_t chunk_size = std::size_t{1} << 16;
    unsigned threads = 1;
};

namespace detail {

template <typename Visit>
void fill_chunk(std::uint64_t seed, std::size_t chunk, std::size_t count, Visit &&visit) {
    Rng rng(seed, chunk);
    for (std::size_t i = 0; i < count; ++i)
        visit(PhiSample(two_pi * rng.uniform()));
}

// Runs `count_chunk(chunk_index, chunk_len)` for every chunk and sums the
// integer results; integer sums keep threaded runs bit-identical.
template <typename Counts, typename CountChunk>
Counts reduce_chunks(std::size_t n, const SamplingOptions &opts, CountChunk &&count_chunk) {
    const std::size_t chunk = std::max<std::size_t>(1, opts.chunk_size);
    const std::size_t chunks = (n + chunk - 1) / chunk;
    std::vector<Counts> partial(chunks);
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t c = first; c < chunks; c += stride)
            partial[c] = count_chunk(c, std::min(chunk, n - c * chunk));
    };
    const unsigned threads = std::max(1u, opts.threads);
    if (threads == 1 || chunks < 2) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work, t, threads);
        for (auto &th : pool)
            th.join();
    }
    Counts total{};
    for (const auto &p : partial)
        total += p;
    return total;
}

struct PairCounts {
    std::uint64_t first = 0;
    std::uint64_t both = 0;

    PairCounts &operator+=(const PairCounts &o) {
        first += o.first;
        both += o.both;
        return *this;
    }
};

} // namespace detail

/// n pseudo-uniform angles on [0, 2pi); identical for identical arguments.
inline std::vector<PhiSample> sample_phi(std::size_t n, std::uint64_t seed, const SamplingOptions &opts = {}) {
    if (n == 0)
        throw Error(ErrorKind::InvariantViolation, "sample_phi needs n >= 1");
    std::vector<PhiSample> out;
    out.reserve(n);
    const std::size_t chunk = std::max<std::size_t>(1, opts.chunk_size);
    for (std::size_t c = 0; c * chunk < n; ++c)
        detail::fill_chunk(seed, c, std::min(chunk, n - c * chunk), [&](PhiSample s) { out.push_back(s); });
    return out;
}

/// Monte Carlo estimate of P(theta_a = +1).
inline double marginal_plus_fraction(Direction a, std::size_t n, std::uint64_t seed, const SamplingOptions &opts = {}) {
    if (n == 0)
        throw Error(ErrorKind::InvariantViolation, "need n >= 1 samples");
    const auto counts = detail::reduce_chunks<detail::PairCounts>(n, opts, [&](std::size_t c, std::size_t len) {
        detail::PairCounts k;
        detail::fill_chunk(seed, c, len, [&](PhiSample phi) { k.first += spin_component(a, phi) == 1; });
        return k;
    });
    return static_cast<double>(counts.first) / static_cast<double>(n);
}

/// Monte Carlo estimate of P(theta_b = +1 | theta_a = +1) under uniform phi.
inline double classical_conditional(Direction a, Direction b, std::size_t n, std::uint64_t seed,
                                    const SamplingOptions &opts = {}) {
    if (n == 0)
        throw Error(ErrorKind::InvariantViolation, "need n >= 1 samples");
    const auto counts = detail::reduce_chunks<detail::PairCounts>(n, opts, [&](std::size_t c, std::size_t len) {
        detail::PairCounts k;
        detail::fill_chunk(seed, c, len, [&](PhiSample phi) {
            if (spin_component(a, phi) == 1) {
                ++k.first;
                k.both += spin_component(b, phi) == 1;
            }
        });
        return k;
    });
    if (counts.first == 0)
        throw Error(ErrorKind::DegenerateConditioning, "no sample has theta_a = +1");
    return static_cast<double>(counts.both) / static_cast<double>(counts.first);
}

/// Overlap of the two half-circles: (pi - separation) / pi.
inline double classical_conditional_exact(Direction a, Direction b) {
    return (std::numbers::pi - angular_separation(a, b)) / std::numbers::pi;
}

/// Qubit eigenvector of spin +1 along a direction in the plane, with the
/// direction angle taken as the Bloch angle.
inline StateVector spin_up_state(Direction a) {
    return StateVector(ComplexVector{std::cos(a.angle / 2.0), std::sin(a.angle / 2.0)});
}

/// P(theta_b = +1 | theta_a = +1) by Born's rule on the qubit eigenvectors.
inline double quantum_conditional(Direction a, Direction b) {
    return transition_probability(spin_up_state(a), spin_up_state(b));
}

struct ComparisonReport {
    double separation = 0.0; // radians
    double classical_estimate = 0.0;
    double classical_exact = 0.0;
    double quantum = 0.0;
    double gap = 0.0; // quantum - classical_exact
};

inline ComparisonReport comparison_report(Direction a, Direction b, std::size_t n, std::uint64_t seed,
                                          const SamplingOptions &opts = {}) {
    ComparisonReport rep;
    rep.separation = angular_separation(a, b);
    rep.classical_estimate = classical_conditional(a, b, n, seed, opts);
    rep.classical_exact = classical_conditional_exact(a, b);
    rep.quantum = quantum_conditional(a, b);
    rep.gap = rep.quantum - rep.classical_exact;
    return rep;
}

} // namespace qdt::spin
