#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "logposit/formats.hpp"
#include "logposit/logmul.hpp"
#include "logposit/mac.hpp"
#include "logposit/sampling.hpp"

namespace logposit {

enum class OperandDistribution { uniform_bits, gaussian_values };

// One arithmetic-error sweep: operand set, multiplier under test, seed.
struct SweepSpec {
    PositFormat format;
    MultiplierConfig cfg;
    Sampling sampling = Sampling::exhaustive;
    std::uint64_t sample_count = 0;  // pairs drawn when sampling == random
    std::uint64_t seed = 0;
    OperandDistribution distribution = OperandDistribution::uniform_bits;

    void validate() const;  // throws on exhaustive sweeps above 8 bits
};

struct PairErrorRecord {
    PositBits exact_bits{0};
    PositBits approx_bits{0};
    double exact_real = 0.0;
    double approx_real = 0.0;
    double error_distance = 0.0;
    std::optional<double> relative_error;  // absent when exact == 0
    bool excluded = false;                 // NaR operand or zero exact product
};

struct ErrorReport {
    double mse = 0.0;
    double mae = 0.0;
    double nmed = 0.0;
    double mred = 0.0;
    double max_re = 0.0;
    std::uint64_t pairs_evaluated = 0;
    std::uint64_t pairs_excluded = 0;
    SweepSpec spec;
};

// One pair through the pipeline (multiply_stage + single-product finalize)
// against the round-to-format exact reference multiplier.
PairErrorRecord evaluate_pair(const PositFormat& format, const MultiplierConfig& cfg,
                              PositBits a, PositBits b);

// Aggregates evaluate_pair over the operand set. Deterministic for a given
// spec, independent of thread count (0 = LOGPOSIT_THREADS / hardware).
ErrorReport run_sweep(const SweepSpec& spec, int threads = 0);

std::string distribution_name(OperandDistribution d);
OperandDistribution parse_distribution(const std::string& name);

}  // namespace logposit
