#include "graphsample.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "gsu/chains.hpp"
#include "gsu/exactlab.hpp"
#include "gsu/graphcore.hpp"

using nlohmann::json;

namespace {

constexpr const char* kSchema = "graphsample/1";

thread_local std::string g_last_error;

gsu_status status_of(const gsu::Error& e) {
    using gsu::ErrorCode;
    switch (e.code()) {
        case ErrorCode::Infeasible: return GSU_ERR_INFEASIBLE;
        case ErrorCode::CapExceeded:
        case ErrorCode::SizeLimitExceeded: return GSU_ERR_CAP;
        case ErrorCode::VerificationFailed:
        case ErrorCode::NotLumpable:
        case ErrorCode::NotReversible:
        case ErrorCode::NonUniformPi: return GSU_ERR_VERIFY;
        case ErrorCode::InvalidArgument:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::Io: return GSU_ERR_USAGE;
        default: return GSU_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
gsu_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        fn();
        return GSU_OK;
    } catch (const gsu::Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return GSU_ERR_INTERNAL;
    }
}

gsu::ChainKind chain_of(gsu_chain chain) {
    return chain == GSU_CHAIN_SWITCH ? gsu::ChainKind::Switch : gsu::ChainKind::Curveball;
}

std::size_t cap_of(long cap) {
    return cap > 0 ? static_cast<std::size_t>(cap) : std::size_t{1'000'000};
}

gsu::TransitionMatrix chain_matrix(const gsu::StateSpace& space, gsu::GraphKind kind,
                                   gsu_chain chain) {
    return chain == GSU_CHAIN_SWITCH ? gsu::switch_matrix(space, kind)
                                     : gsu::curveball_matrix(space, kind);
}

json matrix_entries(const gsu::TransitionMatrix& p) {
    json rows = json::array();
    for (std::size_t i = 0; i < p.dim; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < p.dim; ++j) row.push_back(p.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

struct gsu_degseq {
    gsu::DegreeSequence k;
};

extern "C" {

const char* gsu_last_error(void) { return g_last_error.c_str(); }

void gsu_string_free(char* s) { std::free(s); }

void gsu_degseq_free(gsu_degseq* k) { delete k; }

gsu_status gsu_degseq_parse(const char* json_text, gsu_degseq** out) {
    return guarded([&] {
        auto k = gsu::degree_sequence_from_json(json_text ? json_text : "");
        *out = new gsu_degseq{std::move(k)};
    });
}

gsu_status gsu_degseq_to_json(const gsu_degseq* k, char** out) {
    return guarded([&] { *out = dup_string(gsu::degree_sequence_to_json(k->k)); });
}

gsu_status gsu_degseq_from_matrix_text(const char* text, gsu_degseq** out) {
    return guarded([&] {
        auto [a, kind] = gsu::matrix_from_text(text ? text : "");
        *out = new gsu_degseq{gsu::degrees_of(a, kind)};
    });
}

gsu_status gsu_family(const char* id, long param, gsu_degseq** out) {
    return guarded([&] {
        std::string name = id ? id : "";
        gsu::DegreeSequence k;
        if (name == "5.1")
            k = gsu::family_hub_pair(static_cast<int>(param));
        else if (name == "5.2")
            k = gsu::family_double_star(static_cast<int>(param));
        else
            throw gsu::Error(gsu::ErrorCode::InvalidArgument, "unknown family id: " + name);
        *out = new gsu_degseq{std::move(k)};
    });
}

gsu_status gsu_enumerate_report(const gsu_degseq* k, long cap, char** out) {
    return guarded([&] {
        auto space = gsu::enumerate_states(k->k, cap_of(cap));
        json j;
        j["schema"] = kSchema;
        j["command"] = "enumerate";
        j["kind"] = gsu::to_string(k->k.kind);
        j["num_states"] = space.size();
        *out = dup_string(j.dump());
    });
}

gsu_status gsu_classes_report(const gsu_degseq* k, long cap, char** out) {
    return guarded([&] {
        auto space = gsu::enumerate_states(k->k, cap_of(cap));
        auto part = gsu::iso_partition(space, k->k.kind);
        json j;
        j["schema"] = kSchema;
        j["command"] = "classes";
        j["kind"] = gsu::to_string(k->k.kind);
        j["num_states"] = space.size();
        j["num_classes"] = part.num_classes();
        j["class_sizes"] = part.class_sizes;
        *out = dup_string(j.dump());
    });
}

gsu_status gsu_matrix_report(const gsu_degseq* k, gsu_chain chain, int full,
                             long cap, char** out) {
    return guarded([&] {
        auto space = gsu::enumerate_states(k->k, cap_of(cap));
        auto p = chain_matrix(space, k->k.kind, chain);
        json j;
        j["schema"] = kSchema;
        j["command"] = "matrix";
        j["chain"] = gsu::to_string(chain_of(chain));
        j["num_states"] = space.size();
        if (full) j["matrix"] = matrix_entries(p);
        *out = dup_string(j.dump());
    });
}

gsu_status gsu_project_report(const gsu_degseq* k, gsu_chain chain, long cap, char** out) {
    return guarded([&] {
        auto space = gsu::enumerate_states(k->k, cap_of(cap));
        auto p = chain_matrix(space, k->k.kind, chain);
        auto part = gsu::iso_partition(space, k->k.kind);
        double dev = gsu::check_lumpability(p, part);
        auto pbar = gsu::project(p, part);
        auto pibar = gsu::stationary_projected(pbar, part);
        json j;
        j["schema"] = kSchema;
        j["command"] = "project";
        j["chain"] = gsu::to_string(chain_of(chain));
        j["num_states"] = space.size();
        j["class_sizes"] = part.class_sizes;
        j["lumpability_deviation"] = dev;
        j["projected_matrix"] = matrix_entries(pbar);
        j["stationary"] = pibar;
        *out = dup_string(j.dump());
    });
}

gsu_status gsu_mixing_report(const gsu_degseq* k, gsu_chain chain, double eps,
                             gsu_mixing_mode mode, int full, gsu_format format,
                             long cap, char** out) {
    return guarded([&] {
        auto space = gsu::enumerate_states(k->k, cap_of(cap));
        auto p = chain_matrix(space, k->k.kind, chain);
        gsu::MixingReport report;
        if (mode == GSU_MIXING_ORIGINAL) {
            auto pi = gsu::stationary(p);
            report = gsu::mixing_time(p, pi, eps);
        } else if (mode == GSU_MIXING_PROJECTED) {
            auto part = gsu::iso_partition(space, k->k.kind);
            auto pbar = gsu::project(p, part);
            auto pibar = gsu::stationary_projected(pbar, part);
            report = gsu::mixing_time(pbar, pibar, eps);
        } else {
            auto part = gsu::iso_partition(space, k->k.kind);
            auto pi = gsu::stationary(p);
            report = gsu::mixing_time_lifted(p, part, pi, eps);
        }
        if (format == GSU_FORMAT_CSV) {
            std::ostringstream os;
            os.precision(17);
            os << "t,max_variation_distance\n";
            for (std::size_t t = 0; t < report.distances.size(); ++t)
                os << t << ',' << report.distances[t] << '\n';
            *out = dup_string(os.str());
            return;
        }
        json j;
        j["schema"] = kSchema;
        j["command"] = "mixing";
        j["chain"] = gsu::to_string(chain_of(chain));
        j["mode"] = mode == GSU_MIXING_ORIGINAL    ? "original"
                    : mode == GSU_MIXING_PROJECTED ? "projected"
                                                   : "lifted";
        j["epsilon"] = report.epsilon;
        j["tau"] = report.tau;
        if (full) {
            j["per_start"] = report.per_start;
            j["distances"] = report.distances;
        }
        *out = dup_string(j.dump());
    });
}

gsu_status gsu_spectrum_report(const gsu_degseq* k, gsu_chain chain, int projected,
                               gsu_format format, long cap, char** out) {
    return guarded([&] {
        auto space = gsu::enumerate_states(k->k, cap_of(cap));
        auto p = chain_matrix(space, k->k.kind, chain);
        gsu::SpectralSummary summary;
        if (projected) {
            auto part = gsu::iso_partition(space, k->k.kind);
            auto pbar = gsu::project(p, part);
            summary = gsu::spectral(pbar, gsu::stationary_projected(pbar, part));
        } else {
            summary = gsu::spectral(p, gsu::stationary(p));
        }
        if (format == GSU_FORMAT_CSV) {
            std::ostringstream os;
            os.precision(17);
            os << "eigenvalue\n";
            for (double ev : summary.eigenvalues) os << ev << '\n';
            *out = dup_string(os.str());
            return;
        }
        json j;
        j["schema"] = kSchema;
        j["command"] = "spectrum";
        j["chain"] = gsu::to_string(chain_of(chain));
        j["projected"] = static_cast<bool>(projected);
        j["eigenvalues"] = summary.eigenvalues;
        j["lambda_star"] = summary.lambda_star;
        j["gap"] = summary.gap;
        *out = dup_string(j.dump());
    });
}

gsu_status gsu_sample_report(const gsu_degseq* k, gsu_chain chain, long steps,
                             long samples, uint64_t seed, int preprocess,
                             gsu_format format, char** out) {
    return guarded([&] {
        if (steps < 0 || samples < 0)
            throw gsu::Error(gsu::ErrorCode::InvalidArgument, "steps and samples must be >= 0");
        gsu::ChainConfig cfg;
        cfg.chain = chain_of(chain);
        cfg.steps = static_cast<std::uint64_t>(steps);
        cfg.preprocess = preprocess != 0;
        cfg.seed = seed;
        auto states = gsu::sample(k->k, static_cast<std::uint64_t>(samples), cfg);
        if (format == GSU_FORMAT_CSV) {
            std::ostringstream os;
            os << "replica,state\n";
            for (std::size_t r = 0; r < states.size(); ++r)
                os << r << ',' << states[r].bit_string() << '\n';
            *out = dup_string(os.str());
            return;
        }
        json j;
        j["schema"] = kSchema;
        j["command"] = "sample";
        j["chain"] = gsu::to_string(cfg.chain);
        j["steps"] = steps;
        j["seed"] = seed;
        j["preprocess"] = cfg.preprocess;
        json arr = json::array();
        for (const auto& s : states) arr.push_back(s.bit_string());
        j["states"] = std::move(arr);
        *out = dup_string(j.dump());
    });
}

gsu_status gsu_preprocess_matrix_text(const char* matrix_text, uint64_t seed, char** out) {
    return guarded([&] {
        auto [a, kind] = gsu::matrix_from_text(matrix_text ? matrix_text : "");
        gsu::Rng rng(seed);
        auto b = gsu::preprocess_state(a, kind, rng);
        *out = dup_string(gsu::matrix_to_text(b, kind));
    });
}

gsu_status gsu_verify_report(const gsu_degseq* k, long mc_trials, long cap,
                             uint64_t seed, char** out) {
    gsu_status rc = guarded([&] {
        auto checks = gsu::verify_space(k->k, mc_trials >= 0 ? static_cast<std::size_t>(mc_trials) : 0,
                                        cap_of(cap), seed);
        bool all_pass = true;
        json arr = json::array();
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass;
            arr.push_back({{"name", c.name},
                           {"deviation", c.deviation},
                           {"bound", c.bound},
                           {"pass", c.pass}});
        }
        json j;
        j["schema"] = kSchema;
        j["command"] = "verify";
        j["pass"] = all_pass;
        j["checks"] = std::move(arr);
        *out = dup_string(j.dump());
        if (!all_pass) {
            g_last_error = "one or more verification checks failed";
            throw gsu::Error(gsu::ErrorCode::VerificationFailed, g_last_error);
        }
    });
    return rc;
}

} // extern "C"
