// graphsample CLI: sampling and exact chain analysis over the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "graphsample.h"

namespace {

struct CommonArgs {
    std::string degrees_file;
    std::string matrix_file;
    std::string chain = "switch";
    std::string format = "json";
    std::string out_file;
    double eps = 0.001;
    long steps = 0;
    long samples = 1;
    std::uint64_t seed = 0;
    bool preprocess = false;
    long cap = 1'000'000;
    bool full = false;
    bool projected = false;
    bool lifted = false;
};

int fail(gsu_status rc) {
    std::cerr << "error: " << gsu_last_error() << "\n";
    switch (rc) {
        case GSU_ERR_INFEASIBLE: return 2;
        case GSU_ERR_CAP: return 3;
        case GSU_ERR_VERIFY: return 4;
        default: return 1;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int emit(const char* text, const std::string& out_file) {
    std::string s = text;
    if (out_file.empty()) {
        std::cout << s;
        if (!s.empty() && s.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(out_file, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write file: " << out_file << "\n";
            return 1;
        }
        out << s;
    }
    return 0;
}

// degree sequence from --degrees (JSON) or --matrix (text); exactly one
gsu_status load_degseq(const CommonArgs& args, gsu_degseq** out) {
    if (!args.degrees_file.empty())
        return gsu_degseq_parse(read_file(args.degrees_file).c_str(), out);
    if (!args.matrix_file.empty())
        return gsu_degseq_from_matrix_text(read_file(args.matrix_file).c_str(), out);
    throw CLI::ValidationError("one of --degrees or --matrix is required");
}

gsu_chain chain_of(const CommonArgs& args) {
    if (args.chain == "switch") return GSU_CHAIN_SWITCH;
    if (args.chain == "curveball") return GSU_CHAIN_CURVEBALL;
    throw CLI::ValidationError("--chain must be switch or curveball");
}

gsu_format format_of(const CommonArgs& args) {
    if (args.format == "json") return GSU_FORMAT_JSON;
    if (args.format == "csv") return GSU_FORMAT_CSV;
    throw CLI::ValidationError("--format must be json or csv");
}

void add_input_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--degrees", args.degrees_file, "degree-sequence JSON file");
    cmd->add_option("--matrix", args.matrix_file, "matrix text file (n n' kind + 0/1 rows)");
    cmd->add_option("--cap", args.cap, "state-space enumeration cap");
    cmd->add_option("--out", args.out_file, "write output to file instead of stdout");
}

struct StringGuard {
    char* s = nullptr;
    ~StringGuard() { gsu_string_free(s); }
};

struct DegseqGuard {
    gsu_degseq* k = nullptr;
    ~DegseqGuard() { gsu_degseq_free(k); }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphsample: degree-sequence graph sampling and exact Markov chain analysis"};
    app.require_subcommand(1);
    CommonArgs args;

    auto* c_enum = app.add_subcommand("enumerate", "count all states with the given margins");
    add_input_flags(c_enum, args);

    auto* c_classes = app.add_subcommand("classes", "isomorphism classes of the state space");
    add_input_flags(c_classes, args);

    auto* c_matrix = app.add_subcommand("matrix", "exact transition matrix of a chain");
    add_input_flags(c_matrix, args);
    c_matrix->add_option("--chain", args.chain, "switch or curveball");
    c_matrix->add_flag("--full", args.full, "include matrix entries");

    auto* c_project = app.add_subcommand("project", "projected chain on isomorphism classes");
    add_input_flags(c_project, args);
    c_project->add_option("--chain", args.chain, "switch or curveball");

    auto* c_mixing = app.add_subcommand("mixing", "exact mixing time at threshold --eps");
    add_input_flags(c_mixing, args);
    c_mixing->add_option("--chain", args.chain, "switch or curveball");
    c_mixing->add_option("--eps", args.eps, "variation distance threshold");
    c_mixing->add_flag("--projected", args.projected, "mixing time of the projected chain");
    c_mixing->add_flag("--lifted", args.lifted, "class-uniform starts on the full space");
    c_mixing->add_flag("--full", args.full, "include per-start times and distance trace");
    c_mixing->add_option("--format", args.format, "json or csv (csv: distance trace)");

    auto* c_spectrum = app.add_subcommand("spectrum", "eigenvalues and spectral gap");
    add_input_flags(c_spectrum, args);
    c_spectrum->add_option("--chain", args.chain, "switch or curveball");
    c_spectrum->add_flag("--projected", args.projected, "spectrum of the projected chain");
    c_spectrum->add_option("--format", args.format, "json or csv (csv: eigenvalue list)");

    auto* c_sample = app.add_subcommand("sample", "independent chain replicas");
    add_input_flags(c_sample, args);
    c_sample->add_option("--chain", args.chain, "switch or curveball");
    c_sample->add_option("--steps", args.steps, "chain steps per replica");
    c_sample->add_option("--samples", args.samples, "number of replicas");
    c_sample->add_option("--seed", args.seed, "master seed");
    c_sample->add_flag("--preprocess", args.preprocess, "degree-group relabelling before stepping");
    c_sample->add_option("--format", args.format, "json or csv");

    auto* c_preprocess = app.add_subcommand("preprocess", "one preprocessing step on a matrix");
    c_preprocess->add_option("--matrix", args.matrix_file, "matrix text file")->required();
    c_preprocess->add_option("--seed", args.seed, "seed");
    c_preprocess->add_option("--out", args.out_file, "write output to file instead of stdout");

    auto* c_verify = app.add_subcommand("verify", "structural check suite for a degree sequence");
    add_input_flags(c_verify, args);
    c_verify->add_option("--samples", args.samples, "Monte Carlo trials")->default_val(1'000'000);
    c_verify->add_option("--seed", args.seed, "seed");

    std::string family_id;
    long family_param = 0;
    auto* c_family = app.add_subcommand("family", "emit a named degree-sequence family");
    c_family->add_option("id", family_id, "family id: 5.1 or 5.2")->required();
    c_family->add_option("param", family_param, "family parameter")->required();
    c_family->add_option("--out", args.out_file, "write output to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        StringGuard text;
        gsu_status rc = GSU_OK;

        if (c_family->parsed()) {
            DegseqGuard k;
            rc = gsu_family(family_id.c_str(), family_param, &k.k);
            if (rc == GSU_OK) rc = gsu_degseq_to_json(k.k, &text.s);
        } else if (c_preprocess->parsed()) {
            rc = gsu_preprocess_matrix_text(read_file(args.matrix_file).c_str(), args.seed, &text.s);
        } else {
            DegseqGuard k;
            rc = load_degseq(args, &k.k);
            if (rc == GSU_OK) {
                if (c_enum->parsed()) {
                    rc = gsu_enumerate_report(k.k, args.cap, &text.s);
                } else if (c_classes->parsed()) {
                    rc = gsu_classes_report(k.k, args.cap, &text.s);
                } else if (c_matrix->parsed()) {
                    rc = gsu_matrix_report(k.k, chain_of(args), args.full, args.cap, &text.s);
                } else if (c_project->parsed()) {
                    rc = gsu_project_report(k.k, chain_of(args), args.cap, &text.s);
                } else if (c_mixing->parsed()) {
                    if (args.projected && args.lifted)
                        throw CLI::ValidationError("--projected and --lifted are exclusive");
                    gsu_mixing_mode mode = args.projected ? GSU_MIXING_PROJECTED
                                           : args.lifted  ? GSU_MIXING_LIFTED
                                                          : GSU_MIXING_ORIGINAL;
                    rc = gsu_mixing_report(k.k, chain_of(args), args.eps, mode, args.full,
                                           format_of(args), args.cap, &text.s);
                } else if (c_spectrum->parsed()) {
                    rc = gsu_spectrum_report(k.k, chain_of(args), args.projected,
                                             format_of(args), args.cap, &text.s);
                } else if (c_sample->parsed()) {
                    rc = gsu_sample_report(k.k, chain_of(args), args.steps, args.samples,
                                           args.seed, args.preprocess, format_of(args), &text.s);
                } else if (c_verify->parsed()) {
                    rc = gsu_verify_report(k.k, args.samples, args.cap, args.seed, &text.s);
                }
            }
        }

        if (rc != GSU_OK) {
            // verify still produces its report before failing
            if (text.s) emit(text.s, args.out_file);
            return fail(rc);
        }
        return emit(text.s ? text.s : "", args.out_file);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
