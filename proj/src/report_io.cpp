#include "logposit/report_io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace logposit {

namespace {

using nlohmann::json;

json multiplier_to_json(const MultiplierConfig& cfg) {
    json j;
    j["multiplier"] = cfg.name();
    if (!cfg.is_exact()) {
        j["stages"] = cfg.stages;
        if (cfg.truncation) {
            j["truncation"] = *cfg.truncation;
        }
    }
    return j;
}

MultiplierConfig multiplier_from_json(const json& j) {
    return parse_multiplier_name(j.at("multiplier").get<std::string>());
}

json sweep_spec_to_json(const SweepSpec& spec) {
    json j = multiplier_to_json(spec.cfg);
    j["format"] = spec.format.name();
    j["sampling"] = spec.sampling == Sampling::exhaustive ? "exhaustive" : "random";
    if (spec.sampling == Sampling::random) {
        j["count"] = spec.sample_count;
        j["seed"] = spec.seed;
    }
    j["distribution"] = distribution_name(spec.distribution);
    return j;
}

SweepSpec sweep_spec_from_json(const json& j) {
    SweepSpec spec;
    spec.format = parse_format_name(j.at("format").get<std::string>());
    spec.cfg = multiplier_from_json(j);
    spec.sampling =
        j.at("sampling").get<std::string>() == "exhaustive" ? Sampling::exhaustive : Sampling::random;
    if (spec.sampling == Sampling::random) {
        spec.sample_count = j.at("count").get<std::uint64_t>();
        spec.seed = j.at("seed").get<std::uint64_t>();
    }
    spec.distribution = parse_distribution(j.at("distribution").get<std::string>());
    return spec;
}

json fault_spec_to_json(const FaultSpec& spec) {
    json j;
    j["format"] = spec.format.name();
    j["sampling"] = spec.sampling == Sampling::exhaustive ? "exhaustive" : "random";
    if (spec.sampling == Sampling::random) {
        j["count"] = spec.sample_count;
        j["seed"] = spec.seed;
    }
    j["fields"] = field_filter_name(spec.fields);
    j["policy"] = fault_policy_name(spec.policy);
    return j;
}

FaultSpec fault_spec_from_json(const json& j) {
    FaultSpec spec;
    spec.format = parse_format_name(j.at("format").get<std::string>());
    spec.sampling =
        j.at("sampling").get<std::string>() == "exhaustive" ? Sampling::exhaustive : Sampling::random;
    if (spec.sampling == Sampling::random) {
        spec.sample_count = j.at("count").get<std::uint64_t>();
        spec.seed = j.at("seed").get<std::uint64_t>();
    }
    spec.fields = parse_field_filter(j.at("fields").get<std::string>());
    spec.policy = parse_fault_policy(j.at("policy").get<std::string>());
    return spec;
}

void csv_config_rows(std::ostringstream& out, const json& spec_echo) {
    for (const auto& [key, value] : spec_echo.items()) {
        out << "config." << key << ","
            << (value.is_string() ? value.get<std::string>() : value.dump()) << ",\n";
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

json to_json(const ErrorReport& report) {
    json j;
    j["schema_version"] = report_schema_version;
    j["kind"] = "error_sweep";
    j["spec"] = sweep_spec_to_json(report.spec);
    j["metrics"] = {
        {"mse", report.mse},   {"mae", report.mae},       {"nmed", report.nmed},
        {"mred", report.mred}, {"max_re", report.max_re},
    };
    j["pairs_evaluated"] = report.pairs_evaluated;
    j["pairs_excluded"] = report.pairs_excluded;
    return j;
}

ErrorReport error_report_from_json(const json& j) {
    if (j.at("schema_version").get<int>() != report_schema_version) {
        throw std::invalid_argument("unsupported report schema version");
    }
    if (j.at("kind").get<std::string>() != "error_sweep") {
        throw std::invalid_argument("not an error_sweep report");
    }
    ErrorReport r;
    r.spec = sweep_spec_from_json(j.at("spec"));
    const json& m = j.at("metrics");
    r.mse = m.at("mse").get<double>();
    r.mae = m.at("mae").get<double>();
    r.nmed = m.at("nmed").get<double>();
    r.mred = m.at("mred").get<double>();
    r.max_re = m.at("max_re").get<double>();
    r.pairs_evaluated = j.at("pairs_evaluated").get<std::uint64_t>();
    r.pairs_excluded = j.at("pairs_excluded").get<std::uint64_t>();
    return r;
}

json to_json(const FaultReport& report) {
    json j;
    j["schema_version"] = report_schema_version;
    j["kind"] = "fault_sweep";
    j["spec"] = fault_spec_to_json(report.spec);
    j["metrics"] = {
        {"eta", report.eta},
        {"regime_term", report.regime_term},
        {"exponent_term", report.exponent_term},
        {"fraction_term", report.fraction_term},
    };
    if (report.gamma) {
        j["metrics"]["gamma"] = *report.gamma;
    }
    j["samples"] = report.samples;
    j["excluded"] = report.excluded;
    return j;
}

FaultReport fault_report_from_json(const json& j) {
    if (j.at("schema_version").get<int>() != report_schema_version) {
        throw std::invalid_argument("unsupported report schema version");
    }
    if (j.at("kind").get<std::string>() != "fault_sweep") {
        throw std::invalid_argument("not a fault_sweep report");
    }
    FaultReport r;
    r.spec = fault_spec_from_json(j.at("spec"));
    const json& m = j.at("metrics");
    r.eta = m.at("eta").get<double>();
    r.regime_term = m.at("regime_term").get<double>();
    r.exponent_term = m.at("exponent_term").get<double>();
    r.fraction_term = m.at("fraction_term").get<double>();
    if (m.contains("gamma")) {
        r.gamma = m.at("gamma").get<double>();
    }
    r.samples = j.at("samples").get<std::uint64_t>();
    r.excluded = j.at("excluded").get<std::uint64_t>();
    return r;
}

std::string to_csv(const ErrorReport& report) {
    std::ostringstream out;
    out << "metric,value,units\n";
    out << "schema_version," << report_schema_version << ",\n";
    out << "kind,error_sweep,\n";
    csv_config_rows(out, sweep_spec_to_json(report.spec));
    out << "mse," << format_double(report.mse) << ",value^2\n";
    out << "mae," << format_double(report.mae) << ",value\n";
    out << "nmed," << format_double(report.nmed) << ",ratio\n";
    out << "mred," << format_double(report.mred) << ",ratio\n";
    out << "max_re," << format_double(report.max_re) << ",ratio\n";
    out << "pairs_evaluated," << report.pairs_evaluated << ",count\n";
    out << "pairs_excluded," << report.pairs_excluded << ",count\n";
    return out.str();
}

std::string to_csv(const FaultReport& report) {
    std::ostringstream out;
    out << "metric,value,units\n";
    out << "schema_version," << report_schema_version << ",\n";
    out << "kind,fault_sweep,\n";
    csv_config_rows(out, fault_spec_to_json(report.spec));
    out << "eta," << format_double(report.eta) << ",log2\n";
    out << "regime_term," << format_double(report.regime_term) << ",log2\n";
    out << "exponent_term," << format_double(report.exponent_term) << ",log2\n";
    out << "fraction_term," << format_double(report.fraction_term) << ",log2\n";
    if (report.gamma) {
        out << "gamma," << format_double(*report.gamma) << ",ratio\n";
    }
    out << "samples," << report.samples << ",count\n";
    out << "excluded," << report.excluded << ",count\n";
    return out.str();
}

}  // namespace logposit
