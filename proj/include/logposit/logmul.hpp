#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace logposit {

using Rational = boost::multiprecision::cpp_rational;

// Unsigned fixed-point multiplier operand.
struct Mantissa {
    std::uint64_t value = 0;
    int width = 8;
};

// Multiplier selection: either the exact integer product (reference path)
// or an n-stage iterative logarithmic multiplier with optional operand
// truncation to m bits counted from the leading one.
struct MultiplierConfig {
    enum class Kind { exact, ilm };

    Kind kind = Kind::ilm;
    int stages = 1;
    std::optional<int> truncation;

    static MultiplierConfig exact();
    static MultiplierConfig ilm(int stages, std::optional<int> truncation = std::nullopt);

    bool is_exact() const { return kind == Kind::exact; }
    std::string name() const;  // "exact", "lp3", "lp3t4"

    friend bool operator==(const MultiplierConfig& a, const MultiplierConfig& b) {
        return a.kind == b.kind && a.stages == b.stages && a.truncation == b.truncation;
    }
};

MultiplierConfig parse_multiplier_name(const std::string& name);

// Index of the most significant set bit; nullopt for zero.
std::optional<int> leading_one(Mantissa x);

// Keeps the leading one and the m-1 bits immediately below it, zeroing the
// rest. Zero passes through, width is unchanged.
Mantissa truncate_operand(Mantissa x, int m);

// Single-stage Mitchell product, evaluated exactly in integer arithmetic:
// with a = 2^ka (1+xa), b = 2^kb (1+xb),
//   xa+xb < 1  ->  2^(ka+kb) (1 + xa + xb)
//   xa+xb >= 1 ->  2^(ka+kb+1) (xa + xb)
std::uint64_t mitchell_mul(Mantissa a, Mantissa b);

// One correction term of the iterative scheme.
struct IlmStage {
    std::uint64_t term = 0;      // 2^(ka+kb) + ra*2^kb + rb*2^ka
    int ka = 0;
    int kb = 0;
    std::uint64_t residual_a = 0;  // residuals handed to the next stage
    std::uint64_t residual_b = 0;
};

struct IlmTrace {
    Mantissa operand_a;  // after truncation
    Mantissa operand_b;
    std::vector<IlmStage> stages;
    std::uint64_t result = 0;
    bool exact = false;  // a residual hit zero before the stage budget ran out
};

// Iterative logarithmic product. Truncates both operands first when cfg.m is
// present; each stage adds the Mitchell base term of the current residual
// pair and recurses on the residuals, dropping the product left after the
// last stage. A zero residual terminates early with the exact product.
std::uint64_t ilm_mul(Mantissa a, Mantissa b, const MultiplierConfig& cfg);
IlmTrace ilm_mul_trace(Mantissa a, Mantissa b, const MultiplierConfig& cfg);

// (exact - approx) / exact for the configured multiplier; always >= 0.
// Throws std::domain_error when the exact product is zero.
Rational relative_error(Mantissa a, Mantissa b, const MultiplierConfig& cfg);

}  // namespace logposit
