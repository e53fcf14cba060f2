#pragma once

#include <cstddef>
#include <vector>

#include "ebnd/spectrum.hpp"

namespace ebnd {

// Probability vector on a truncated slice of the naturals. support_offset is
// the absolute index of the first stored entry; certified_tail is the mass
// past the stored head (certified small by the truncation plan that built
// the vector), kept so stored mass + tail stays exactly one.
class Distribution {
public:
    // Normalizes weights so that sum(probs) + certified_tail = 1.
    static Distribution from_weights(std::size_t support_offset, std::vector<double> weights,
                                     double tail_mass);
    static Distribution point_mass(std::size_t index);

    std::size_t support_offset() const { return offset_; }
    const std::vector<double>& probs() const { return probs_; }
    double certified_tail() const { return tail_; }
    std::size_t size() const { return probs_.size(); }

    // Probability of the absolute symbol index (0 off the stored head).
    double at(std::size_t absolute_index) const;

private:
    Distribution() = default;
    std::size_t offset_ = 0;
    std::vector<double> probs_;
    double tail_ = 0.0;
};

// Joint probabilities on a truncated block of N0 x N0 anchored at (0,0),
// stored row-major: rows index X, columns index Y.
class JointDistribution {
public:
    static JointDistribution from_weights(std::size_t rows, std::size_t cols,
                                          std::vector<double> weights, double tail_mass);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double at(std::size_t i, std::size_t j) const { return probs_[i * cols_ + j]; }
    double certified_tail() const { return tail_; }

    Distribution marginal_x() const;
    Distribution marginal_y() const;

private:
    JointDistribution() = default;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> probs_;
    double tail_ = 0.0;
};

// -sum p log p with 0 log 0 = 0, in the configured base. The tail can add at
// most entropy_tail_bar(d) (reported separately, never folded into the value).
double shannon_entropy(const Distribution& d);
double entropy_tail_bar(const Distribution& d);

// H(X|Y) = H(XY) - H(Y), conventions as above.
double conditional_entropy(const JointDistribution& j);

// Half the l1 distance over the union support; half the certified tails is
// the associated error bar (tv_error_bar).
double tv_distance(const Distribution& p, const Distribution& q);
double tv_error_bar(const Distribution& p, const Distribution& q);

// sum f(x) p(x) over the represented support, f given by the spectrum levels.
double expected_f(const Distribution& d, const Spectrum& s);

}  // namespace ebnd
