#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace logposit {

using BigInt = boost::multiprecision::cpp_int;

// Dyadic rational num * 2^exp2 plus a NaR flag. This is the exact substrate
// every oracle in the project runs on: posit values, products and quire
// contents are all representable without rounding.
//
// Canonical form: num is odd or zero, and a zero/NaR value has num == 0,
// exp2 == 0. Equality is therefore plain member comparison.
class ExactValue {
public:
    ExactValue() = default;
    ExactValue(BigInt num, int exp2);

    static ExactValue nar();
    static ExactValue from_integer(std::int64_t v);
    // Exact conversion; NaN/Inf map to NaR.
    static ExactValue from_double(double v);

    bool is_nar() const { return nar_; }
    bool is_zero() const { return !nar_ && num_.is_zero(); }
    int sign() const;

    const BigInt& numerator() const { return num_; }
    int exponent() const { return exp2_; }

    ExactValue operator-() const;
    ExactValue abs() const;
    ExactValue operator+(const ExactValue& other) const;
    ExactValue operator-(const ExactValue& other) const;
    ExactValue operator*(const ExactValue& other) const;

    bool operator==(const ExactValue& other) const;
    bool operator!=(const ExactValue& other) const { return !(*this == other); }
    // Numeric order; comparing NaR is a programming error.
    bool operator<(const ExactValue& other) const;
    bool operator>(const ExactValue& other) const { return other < *this; }
    bool operator<=(const ExactValue& other) const { return !(other < *this); }
    bool operator>=(const ExactValue& other) const { return !(*this < other); }

    // floor(log2 |x|); requires a nonzero finite value.
    int floor_log2_abs() const;
    // log2 |x| in double precision; requires a nonzero finite value.
    double log2_abs() const;

    double to_double() const;
    // "num/2^k" as a plain fraction string ("13/32", "-5", "96").
    std::string to_string() const;

private:
    BigInt num_;
    int exp2_ = 0;
    bool nar_ = false;

    void normalize();
};

}  // namespace logposit
