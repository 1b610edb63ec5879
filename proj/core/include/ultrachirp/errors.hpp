#pragma once

#include <stdexcept>
#include <string>

namespace ultrachirp {

/// Base of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define ULTRACHIRP_DEFINE_ERROR(Name, tag)                                   \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(tag, what) {}         \
    }

ULTRACHIRP_DEFINE_ERROR(InvalidArgument, "invalid_argument");
ULTRACHIRP_DEFINE_ERROR(DegenerateInput, "degenerate_input");
ULTRACHIRP_DEFINE_ERROR(GridTooNarrow, "grid_too_narrow");
ULTRACHIRP_DEFINE_ERROR(LevelCrossing, "level_crossing");
ULTRACHIRP_DEFINE_ERROR(SingularPoint, "singular_point");
ULTRACHIRP_DEFINE_ERROR(NotAsymptotic, "not_asymptotic");
ULTRACHIRP_DEFINE_ERROR(NoSignChange, "no_sign_change");
ULTRACHIRP_DEFINE_ERROR(ConfigError, "config_error");

#undef ULTRACHIRP_DEFINE_ERROR

/// e^{-z^2} left the double range while reflecting into the lower half-plane.
class OverflowError : public Error {
public:
    OverflowError(const std::string& what, double re, double im)
        : Error("overflow", what), re_(re), im_(im) {}
    double re() const noexcept { return re_; }
    double im() const noexcept { return im_; }

private:
    double re_;
    double im_;
};

/// Numerical accuracy certificate failed (step halving or norm drift).
class AccuracyError : public Error {
public:
    AccuracyError(std::string kind, const std::string& what, double measured, double limit)
        : Error(std::move(kind), what), measured_(measured), limit_(limit) {}
    double measured() const noexcept { return measured_; }
    double limit() const noexcept { return limit_; }

private:
    double measured_;
    double limit_;
};

}  // namespace ultrachirp
