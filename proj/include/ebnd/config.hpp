#pragma once

#include <atomic>
#include <cmath>
#include <numbers>
#include <string>

namespace ebnd {

// Unit of all entropy-valued results. Internal computation is always in
// natural log; conversion happens once at the public boundary.
enum class LogBase { nats, bits };

namespace detail {
inline std::atomic<LogBase>& log_base_flag() {
    static std::atomic<LogBase> flag{LogBase::nats};
    return flag;
}
}  // namespace detail

inline void set_log_base(LogBase base) { detail::log_base_flag().store(base); }
inline LogBase log_base() { return detail::log_base_flag().load(); }

// Factor converting a value in nats into the configured base.
inline double entropy_unit_factor() {
    return log_base() == LogBase::bits ? 1.0 / std::numbers::ln2 : 1.0;
}

inline double from_nats(double nats) { return nats * entropy_unit_factor(); }

inline std::string log_base_name() {
    return log_base() == LogBase::bits ? "bits" : "nats";
}

}  // namespace ebnd
