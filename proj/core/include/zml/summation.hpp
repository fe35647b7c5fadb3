#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>

#include "zml/ext_real.hpp"
#include "zml/parallel.hpp"

namespace zml {

/// Neumaier's improved Kahan-Babuska summation.
class NeumaierSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexNeumaierSum {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    NeumaierSum re_;
    NeumaierSum im_;
};

inline constexpr std::size_t kShards = 64;

/// Sum of term(i) over [0, n) split into 64 contiguous shards. Each shard is
/// accumulated in ExtReal and the shard totals are combined in shard order,
/// so the result does not depend on the worker count.
inline ExtReal sharded_sum(std::size_t n, const std::function<ExtReal(std::size_t)>& term) {
    std::array<ExtReal, kShards> partial{};
    parallel_for(kShards, [&](std::size_t s) {
        const std::size_t begin = n * s / kShards;
        const std::size_t end = n * (s + 1) / kShards;
        ExtReal acc;
        for (std::size_t i = begin; i < end; ++i) acc += term(i);
        partial[s] = acc;
    });
    ExtReal total;
    for (const auto& p : partial) total += p;
    return total;
}

inline ExtComplex sharded_sum_complex(std::size_t n,
                                      const std::function<ExtComplex(std::size_t)>& term) {
    std::array<ExtComplex, kShards> partial{};
    parallel_for(kShards, [&](std::size_t s) {
        const std::size_t begin = n * s / kShards;
        const std::size_t end = n * (s + 1) / kShards;
        ExtComplex acc;
        for (std::size_t i = begin; i < end; ++i) acc += term(i);
        partial[s] = acc;
    });
    ExtComplex total;
    for (const auto& p : partial) total += p;
    return total;
}

}  // namespace zml
