#include "logposit/logmul.hpp"

#include "logposit/exact.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace logposit {

MultiplierConfig MultiplierConfig::exact() { return MultiplierConfig{Kind::exact, 0, std::nullopt}; }

MultiplierConfig MultiplierConfig::ilm(int stages, std::optional<int> truncation) {
    if (stages < 1) {
        throw std::invalid_argument("ilm stage count must be >= 1");
    }
    if (truncation && *truncation < 1) {
        throw std::invalid_argument("truncation width must be >= 1");
    }
    return MultiplierConfig{Kind::ilm, stages, truncation};
}

std::string MultiplierConfig::name() const {
    if (is_exact()) {
        return "exact";
    }
    std::string s = "lp" + std::to_string(stages);
    if (truncation) {
        s += "t" + std::to_string(*truncation);
    }
    return s;
}

MultiplierConfig parse_multiplier_name(const std::string& name) {
    if (name == "exact") {
        return MultiplierConfig::exact();
    }
    if (name.size() >= 3 && name[0] == 'l' && name[1] == 'p') {
        const auto t = name.find('t', 2);
        try {
            const int stages = std::stoi(name.substr(2, t == std::string::npos ? std::string::npos : t - 2));
            if (t == std::string::npos) {
                return MultiplierConfig::ilm(stages);
            }
            return MultiplierConfig::ilm(stages, std::stoi(name.substr(t + 1)));
        } catch (const std::invalid_argument&) {
        }
    }
    throw std::invalid_argument("bad multiplier selector: " + name);
}

std::optional<int> leading_one(Mantissa x) {
    if (x.value == 0) {
        return std::nullopt;
    }
    return std::bit_width(x.value) - 1;
}

Mantissa truncate_operand(Mantissa x, int m) {
    if (m < 1) {
        throw std::invalid_argument("truncation width must be >= 1");
    }
    const auto lead = leading_one(x);
    if (!lead) {
        return x;
    }
    const int cut = *lead - m + 1;
    if (cut <= 0) {
        return x;
    }
    return Mantissa{x.value & ~((std::uint64_t{1} << cut) - 1), x.width};
}

std::uint64_t mitchell_mul(Mantissa a, Mantissa b) {
    if (a.value == 0 || b.value == 0) {
        return 0;
    }
    const int ka = *leading_one(a);
    const int kb = *leading_one(b);
    const std::uint64_t ra = a.value - (std::uint64_t{1} << ka);
    const std::uint64_t rb = b.value - (std::uint64_t{1} << kb);
    // xa + xb >= 1  <=>  ra*2^kb + rb*2^ka >= 2^(ka+kb)
    const std::uint64_t cross = (ra << kb) + (rb << ka);
    const std::uint64_t unit = std::uint64_t{1} << (ka + kb);
    if (cross < unit) {
        return unit + cross;
    }
    return cross << 1;
}

IlmTrace ilm_mul_trace(Mantissa a, Mantissa b, const MultiplierConfig& cfg) {
    IlmTrace trace;
    if (cfg.truncation) {
        a = truncate_operand(a, *cfg.truncation);
        b = truncate_operand(b, *cfg.truncation);
    }
    trace.operand_a = a;
    trace.operand_b = b;
    if (cfg.is_exact()) {
        trace.result = a.value * b.value;
        trace.exact = true;
        return trace;
    }

    std::uint64_t ra = a.value;
    std::uint64_t rb = b.value;
    std::uint64_t acc = 0;
    for (int stage = 0; stage < cfg.stages; ++stage) {
        if (ra == 0 || rb == 0) {
            trace.exact = true;
            break;
        }
        const int ka = std::bit_width(ra) - 1;
        const int kb = std::bit_width(rb) - 1;
        const std::uint64_t next_ra = ra - (std::uint64_t{1} << ka);
        const std::uint64_t next_rb = rb - (std::uint64_t{1} << kb);
        const std::uint64_t term =
            (std::uint64_t{1} << (ka + kb)) + (next_ra << kb) + (next_rb << ka);
        acc += term;
        trace.stages.push_back(IlmStage{term, ka, kb, next_ra, next_rb});
        ra = next_ra;
        rb = next_rb;
    }
    if (ra == 0 || rb == 0) {
        trace.exact = true;
    }
    trace.result = acc;
    return trace;
}

std::uint64_t ilm_mul(Mantissa a, Mantissa b, const MultiplierConfig& cfg) {
    if (cfg.truncation) {
        a = truncate_operand(a, *cfg.truncation);
        b = truncate_operand(b, *cfg.truncation);
    }
    if (cfg.is_exact()) {
        return a.value * b.value;
    }
    std::uint64_t ra = a.value;
    std::uint64_t rb = b.value;
    std::uint64_t acc = 0;
    for (int stage = 0; stage < cfg.stages && ra != 0 && rb != 0; ++stage) {
        const int ka = std::bit_width(ra) - 1;
        const int kb = std::bit_width(rb) - 1;
        ra -= std::uint64_t{1} << ka;
        rb -= std::uint64_t{1} << kb;
        acc += (std::uint64_t{1} << (ka + kb)) + (ra << kb) + (rb << ka);
    }
    return acc;
}

Rational relative_error(Mantissa a, Mantissa b, const MultiplierConfig& cfg) {
    if (a.value == 0 || b.value == 0) {
        throw std::domain_error("relative error undefined for a zero exact product");
    }
    const BigInt exact = BigInt(a.value) * b.value;
    const BigInt approx = ilm_mul(a, b, cfg);
    return Rational(exact - approx, exact);
}

}  // namespace logposit
