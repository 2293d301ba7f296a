#include "logposit/exact.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace logposit {

namespace {

BigInt shifted(const BigInt& v, int up) {
    return up >= 0 ? BigInt(v << up) : BigInt(v >> -up);
}

}  // namespace

ExactValue::ExactValue(BigInt num, int exp2) : num_(std::move(num)), exp2_(exp2) {
    normalize();
}

void ExactValue::normalize() {
    if (num_.is_zero()) {
        exp2_ = 0;
        return;
    }
    const unsigned tz = boost::multiprecision::lsb(boost::multiprecision::abs(num_));
    if (tz > 0) {
        num_ >>= tz;
        exp2_ += static_cast<int>(tz);
    }
}

ExactValue ExactValue::nar() {
    ExactValue v;
    v.nar_ = true;
    return v;
}

ExactValue ExactValue::from_integer(std::int64_t v) { return ExactValue(BigInt(v), 0); }

ExactValue ExactValue::from_double(double v) {
    if (!std::isfinite(v)) {
        return nar();
    }
    if (v == 0.0) {
        return ExactValue();
    }
    int e = 0;
    const double m = std::frexp(v, &e);  // v = m * 2^e, |m| in [0.5, 1)
    const auto scaled = static_cast<std::int64_t>(std::ldexp(m, 53));
    return ExactValue(BigInt(scaled), e - 53);
}

int ExactValue::sign() const {
    if (num_.is_zero()) {
        return 0;
    }
    return num_ < 0 ? -1 : 1;
}

ExactValue ExactValue::operator-() const {
    if (nar_) {
        return nar();
    }
    ExactValue r = *this;
    r.num_ = -r.num_;
    return r;
}

ExactValue ExactValue::abs() const {
    if (nar_) {
        return nar();
    }
    ExactValue r = *this;
    r.num_ = boost::multiprecision::abs(r.num_);
    return r;
}

ExactValue ExactValue::operator+(const ExactValue& other) const {
    if (nar_ || other.nar_) {
        return nar();
    }
    const int e = std::min(exp2_, other.exp2_);
    return ExactValue(shifted(num_, exp2_ - e) + shifted(other.num_, other.exp2_ - e), e);
}

ExactValue ExactValue::operator-(const ExactValue& other) const { return *this + (-other); }

ExactValue ExactValue::operator*(const ExactValue& other) const {
    if (nar_ || other.nar_) {
        return nar();
    }
    return ExactValue(num_ * other.num_, exp2_ + other.exp2_);
}

bool ExactValue::operator==(const ExactValue& other) const {
    if (nar_ || other.nar_) {
        return nar_ == other.nar_;
    }
    return exp2_ == other.exp2_ && num_ == other.num_;
}

bool ExactValue::operator<(const ExactValue& other) const {
    if (nar_ || other.nar_) {
        throw std::logic_error("ExactValue: ordering is undefined for NaR");
    }
    const int sa = sign();
    const int sb = other.sign();
    if (sa != sb) {
        return sa < sb;
    }
    const int e = std::min(exp2_, other.exp2_);
    return shifted(num_, exp2_ - e) < shifted(other.num_, other.exp2_ - e);
}

int ExactValue::floor_log2_abs() const {
    if (nar_ || num_.is_zero()) {
        throw std::domain_error("ExactValue: log2 of zero or NaR");
    }
    const auto bits = static_cast<int>(boost::multiprecision::msb(boost::multiprecision::abs(num_)));
    return bits + exp2_;
}

double ExactValue::log2_abs() const {
    if (nar_ || num_.is_zero()) {
        throw std::domain_error("ExactValue: log2 of zero or NaR");
    }
    const BigInt mag = boost::multiprecision::abs(num_);
    const auto top = static_cast<int>(boost::multiprecision::msb(mag));
    // Scale into [1, 2) before converting so huge numerators stay accurate.
    const double mant = static_cast<double>(BigInt((mag << 62) >> top)) * std::ldexp(1.0, -62);
    return std::log2(mant) + top + exp2_;
}

double ExactValue::to_double() const {
    if (nar_) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (num_.is_zero()) {
        return 0.0;
    }
    const BigInt mag = boost::multiprecision::abs(num_);
    const auto top = static_cast<int>(boost::multiprecision::msb(mag));
    double m;
    if (top <= 62) {
        m = static_cast<double>(static_cast<std::uint64_t>(mag));
    } else {
        // Keep 63 significant bits plus a sticky bit so double rounding
        // cannot drift by more than the final conversion's ulp.
        BigInt kept = mag >> (top - 62);
        if (!BigInt(mag - (kept << (top - 62))).is_zero()) {
            kept |= 1;
        }
        m = std::ldexp(static_cast<double>(static_cast<std::uint64_t>(kept)), top - 62);
    }
    const double r = std::ldexp(m, exp2_);
    return num_ < 0 ? -r : r;
}

std::string ExactValue::to_string() const {
    if (nar_) {
        return "NaR";
    }
    if (num_.is_zero()) {
        return "0";
    }
    if (exp2_ >= 0) {
        return BigInt(num_ << exp2_).str();
    }
    return num_.str() + "/" + BigInt(BigInt(1) << -exp2_).str();
}

}  // namespace logposit
