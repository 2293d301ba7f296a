#include "logposit/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace logposit {

void FaultSpec::validate() const {
    if (sampling == Sampling::exhaustive && format.n_bits > 8) {
        throw std::invalid_argument("exhaustive fault sweeps are only supported for 8-bit formats");
    }
    if (sampling == Sampling::random && sample_count == 0) {
        throw std::invalid_argument("random fault sweep needs a sample count");
    }
}

PositBits inject(const PositFormat& format, PositBits bits, int position) {
    validate_bits(format, bits);
    if (position < 0 || position >= format.n_bits) {
        throw std::out_of_range("bit position " + std::to_string(position) + " outside word of " +
                                std::to_string(format.n_bits) + " bits");
    }
    return PositBits{bits.raw ^ (1u << position)};
}

std::vector<int> field_positions(const PositFormat& format, PositBits bits, BitFieldFilter field) {
    const int n = format.n_bits;
    std::vector<int> positions;
    if (field == BitFieldFilter::all) {
        positions.resize(n);
        for (int i = 0; i < n; ++i) {
            positions[i] = i;
        }
        return positions;
    }
    if (field == BitFieldFilter::sign) {
        return {n - 1};
    }

    const DecodedPosit d = decode(format, bits);
    if (d.is_zero || d.is_nar) {
        return {};
    }
    const RegimeLayout regime = regime_field_layout(format, d.k);
    const int regime_lo = n - 1 - regime.bits();
    const int es_avail = n - 1 - regime.bits() - d.frac_width;
    switch (field) {
        case BitFieldFilter::regime:
            for (int i = regime_lo; i <= n - 2; ++i) {
                positions.push_back(i);
            }
            break;
        case BitFieldFilter::exponent:
            for (int i = d.frac_width; i < d.frac_width + es_avail; ++i) {
                positions.push_back(i);
            }
            break;
        case BitFieldFilter::fraction:
            for (int i = 0; i < d.frac_width; ++i) {
                positions.push_back(i);
            }
            break;
        default:
            break;
    }
    return positions;
}

namespace {

struct FaultPartial {
    double sum_eta = 0.0;
    double sum_regime = 0.0;
    double sum_exponent = 0.0;
    double sum_fraction = 0.0;
    std::uint64_t included = 0;
    std::uint64_t excluded = 0;
};

double log2_mantissa(const DecodedPosit& d) {
    // log2(1 + f/2^w), exact fields, double evaluation
    return std::log2(1.0 + std::ldexp(static_cast<double>(d.f), -d.frac_width));
}

void run_operand(const PositFormat& format, const FaultSpec& spec, PositBits word,
                 FaultPartial& part) {
    const DecodedPosit d_o = decode(format, word);
    const std::vector<int> positions = field_positions(format, word, spec.fields);
    if (d_o.is_zero || d_o.is_nar) {
        part.excluded += positions.size();
        return;
    }
    const std::uint32_t mag = magnitude_word(format, word);
    const double log_o = to_exact(format, word).log2_abs();

    for (const int pos : positions) {
        if (pos == format.n_bits - 1) {
            // Sign fault: magnitude untouched.
            ++part.included;
            continue;
        }
        const PositBits faulted{mag ^ (1u << pos)};
        const DecodedPosit d_f = decode(format, faulted);
        if (d_f.is_zero || d_f.is_nar) {
            if (spec.policy == SpecialFaultPolicy::zero_distortion) {
                ++part.included;
            } else {
                ++part.excluded;
            }
            continue;
        }
        ++part.included;
        part.sum_eta += std::abs(log_o - to_exact(format, faulted).log2_abs());
        part.sum_regime += format.scale_step() * std::abs(d_o.k - d_f.k);
        part.sum_exponent += std::abs(static_cast<int>(d_o.e) - static_cast<int>(d_f.e));
        part.sum_fraction += std::abs(log2_mantissa(d_o) - log2_mantissa(d_f));
    }
}

}  // namespace

FaultReport ece_empirical(const FaultSpec& spec, int threads) {
    spec.validate();

    std::vector<PositBits> operands;
    std::uint64_t total;
    if (spec.sampling == Sampling::exhaustive) {
        total = std::uint64_t{1} << spec.format.n_bits;
    } else {
        total = spec.sample_count;
        operands.reserve(total);
        SeededRng rng(spec.seed);
        for (std::uint64_t i = 0; i < total; ++i) {
            operands.push_back(PositBits{rng.next_bits(spec.format.n_bits)});
        }
    }
    auto operand_at = [&](std::uint64_t i) {
        return spec.sampling == Sampling::exhaustive ? PositBits{static_cast<std::uint32_t>(i)}
                                                     : operands[i];
    };

    auto map = [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
        FaultPartial part;
        for (std::uint64_t i = begin; i < end; ++i) {
            run_operand(spec.format, spec, operand_at(i), part);
        }
        return part;
    };
    auto reduce = [](FaultPartial& acc, const FaultPartial& p) {
        acc.sum_eta += p.sum_eta;
        acc.sum_regime += p.sum_regime;
        acc.sum_exponent += p.sum_exponent;
        acc.sum_fraction += p.sum_fraction;
        acc.included += p.included;
        acc.excluded += p.excluded;
    };
    const FaultPartial agg = blocked_reduce<FaultPartial>(total, map, reduce, threads, 1 << 10);

    FaultReport report;
    report.spec = spec;
    report.samples = agg.included;
    report.excluded = agg.excluded;
    if (agg.included > 0) {
        const auto n = static_cast<double>(agg.included);
        report.eta = agg.sum_eta / n;
        report.regime_term = agg.sum_regime / n;
        report.exponent_term = agg.sum_exponent / n;
        report.fraction_term = agg.sum_fraction / n;
    }
    return report;
}

double improvement_factor(const FaultReport& standard_run, const FaultReport& bounded_run) {
    const FaultSpec& s = standard_run.spec;
    const FaultSpec& b = bounded_run.spec;
    if (s.format.n_bits != b.format.n_bits || s.format.es != b.format.es ||
        s.sampling != b.sampling || s.sample_count != b.sample_count || s.seed != b.seed ||
        s.fields != b.fields) {
        throw std::invalid_argument("improvement factor needs reports over matched sweeps");
    }
    if (bounded_run.eta == 0.0) {
        throw std::invalid_argument("improvement factor undefined for zero bounded eta");
    }
    return standard_run.eta / bounded_run.eta;
}

std::string field_filter_name(BitFieldFilter f) {
    switch (f) {
        case BitFieldFilter::all: return "all";
        case BitFieldFilter::sign: return "sign";
        case BitFieldFilter::regime: return "regime";
        case BitFieldFilter::exponent: return "exponent";
        case BitFieldFilter::fraction: return "fraction";
    }
    throw std::logic_error("bad BitFieldFilter");
}

BitFieldFilter parse_field_filter(const std::string& name) {
    if (name == "all") return BitFieldFilter::all;
    if (name == "sign") return BitFieldFilter::sign;
    if (name == "regime") return BitFieldFilter::regime;
    if (name == "exponent") return BitFieldFilter::exponent;
    if (name == "fraction") return BitFieldFilter::fraction;
    throw std::invalid_argument("bad field restriction: " + name);
}

std::string fault_policy_name(SpecialFaultPolicy p) {
    return p == SpecialFaultPolicy::exclude ? "exclude" : "zero-distortion";
}

SpecialFaultPolicy parse_fault_policy(const std::string& name) {
    if (name == "exclude") return SpecialFaultPolicy::exclude;
    if (name == "zero-distortion") return SpecialFaultPolicy::zero_distortion;
    throw std::invalid_argument("bad fault policy: " + name);
}

}  // namespace logposit
