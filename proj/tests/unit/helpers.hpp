#pragma once

#include <cmath>
#include <functional>

#include <doctest.h>

#include "hybridhopf/eco.hpp"
#include "hybridhopf/errors.hpp"

namespace testing {

inline const hybridhopf::EcoParams interior{1.0, 1.0, 0.3, 0.2, 0.6, 0.0};
inline const hybridhopf::EcoParams second{0.8, 0.5, 0.4, 0.1, 0.3, 0.0};

inline double rel(double value, double ref) { return std::abs(value - ref) / std::max(std::abs(ref), 1e-300); }

/// Code of the library error thrown by f; fails the test if nothing is thrown.
inline hybridhopf::ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const hybridhopf::Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return hybridhopf::ErrorCode::ConfigError;
}

} // namespace testing
