#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ebnd {

// Tail rules for spectra with infinitely many levels. The explicit head
// holds the first levels; the rule generates (or, for AffineFloorTail,
// only lower-bounds) every level past the head. Rules are stated in the
// raw index/energy frame of the input; re-grounding and index shifts are
// tracked by the owning Spectrum.
struct LinearTail {
    double slope = 1.0;   // level(i) = slope*i + offset, slope > 0
    double offset = 0.0;
};
struct PowerTail {
    double exponent = 1.0;  // level(i) = scale * i^exponent, exponent >= 1
    double scale = 1.0;     // scale > 0
};
// User-supplied certificate: true levels past the head are unknown but
// bounded below by slope*i + intercept with slope > 0. Such spectra can
// only be summed up to the head; the floor certifies the remaining tail.
struct AffineFloorTail {
    double slope = 1.0;
    double intercept = 0.0;
};
using TailRule = std::variant<LinearTail, PowerTail, AffineFloorTail>;

// Affine lower bound l(i) = slope*i + intercept on levels at indices >= from,
// in the spectrum's current (shifted) frame.
struct AffineFloor {
    double slope = 0.0;
    double intercept = 0.0;
    double at(double i) const { return slope * i + intercept; }
};

struct TruncationPlan {
    std::size_t cutoff_index = 0;  // levels i < cutoff_index are summed
    double tail_bound = 0.0;       // certified bound on both omitted sums
    double beta_floor = 0.0;       // plan is valid for every beta >= beta_floor
};

// A validated constraint spectrum {h_i}: the eigenvalues of H, equivalently
// the classical constraint function f. Levels are non-decreasing; validate()
// re-grounds so h_0 = 0. Instances produced by shift_plus() may have a
// positive minimum. Immutable after construction.
class Spectrum {
public:
    bool is_finite() const { return !tail_.has_value(); }
    // Number of levels of a finite spectrum.
    std::size_t size() const { return head_.size(); }
    std::size_t head_size() const { return head_.size(); }

    // Level at index i; past the head this evaluates the tail rule.
    double level(std::size_t i) const;
    // True when level(i) can be evaluated (always, except past the head of
    // an AffineFloorTail spectrum).
    bool can_materialize(std::size_t i) const;

    double min_level() const { return head_.front(); }
    double max_level() const { return head_.back(); }  // finite spectra only
    // Spectral gap h_1. Requires at least two represented levels.
    double gap() const;
    // Number of levels equal to the minimum (dim ker H for grounded spectra).
    std::size_t ground_multiplicity() const;

    // Shift subtracted from the raw input at validation time.
    double recorded_shift() const { return shift_; }
    const std::optional<TailRule>& tail_rule() const { return tail_; }
    const std::vector<double>& head() const { return head_; }
    const std::string& name() const { return name_; }

    // Affine lower bound on levels at indices >= anchor (anchor >= head_size
    // for generated tails). For PowerTail this is the tangent at anchor.
    AffineFloor affine_floor(std::size_t anchor) const;

    // Whether levels past the explicit head exist but cannot be evaluated.
    bool tail_is_floor_only() const {
        return tail_ && std::holds_alternative<AffineFloorTail>(*tail_);
    }

private:
    friend Spectrum validate(std::vector<double>, std::optional<TailRule>, std::string);
    friend Spectrum shift_plus(const Spectrum&);
    Spectrum() = default;

    std::vector<double> head_;
    std::optional<TailRule> tail_;
    double shift_ = 0.0;          // raw-frame energy shift (h -> h - shift_)
    std::size_t index_offset_ = 0;  // raw-frame index shift from shift_plus
    std::string name_;
};

// Validates raw levels (any order) into a grounded non-decreasing Spectrum.
// Throws EmptySpectrum, NonFiniteLevel, NonMonotoneGenerator.
Spectrum validate(std::vector<double> raw_levels,
                  std::optional<TailRule> generator = std::nullopt,
                  std::string name = {});

// The spectrum with levels h'_i = h_{i+1} (H_plus). Not re-grounded: the
// result in general has a positive minimum h_1. Throws TooFewLevels.
Spectrum shift_plus(const Spectrum& s);

// Smallest represented cutoff such that the omitted tails of
// sum e^{-beta h_i} and sum h_i e^{-beta h_i} are certified < tol.
// Throws BetaTooSmall when beta is under the 1e-12 floor for an infinite
// spectrum, or when the tail cannot be certified within the cutoff cap.
TruncationPlan plan_truncation(const Spectrum& s, double beta, double tol);

namespace limits {
inline constexpr double beta_floor = 1e-12;
inline constexpr std::size_t cutoff_cap = std::size_t{1} << 22;
}

}  // namespace ebnd
