// Command line front end; talks to the library exclusively through the C
// interface in jsantalo.h.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jsantalo.h"

namespace {

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::string config;
    std::string out_dir;
    std::uint64_t samples = 0;  // 0 keeps defaults
    double tol = 0.0;
    int j = 2;
    std::string mode;
};

void add_globals(CLI::App* cmd, GlobalOpts& g) {
    cmd->add_option("--seed", g.seed, "master RNG seed");
    cmd->add_option("--config", g.config, "key = value config file");
    cmd->add_option("--out", g.out_dir, "report output directory");
    cmd->add_option("--samples", g.samples, "Monte Carlo sample budget");
    cmd->add_option("--tol", g.tol, "assertion tolerance");
}

int run_campaign(const char* name, const GlobalOpts& g) {
    jsant_report* rep = nullptr;
    jsant_status st = jsant_run_campaign(
        name, g.config.empty() ? nullptr : g.config.c_str(),
        g.mode.empty() ? nullptr : g.mode.c_str(), g.seed, g.samples, g.tol,
        g.out_dir.empty() ? nullptr : g.out_dir.c_str(), &rep);
    if (st != JSANT_OK) {
        std::fprintf(stderr, "error: %s\n", jsant_last_error());
        return 1;
    }
    char* json = nullptr;
    if (jsant_report_json(rep, &json) == JSANT_OK) {
        std::fputs(json, stdout);
        std::fputc('\n', stdout);
        jsant_string_free(json);
    }
    int code = jsant_report_exit_code(rep);
    jsant_report_free(rep);
    return code;
}

jsant_body* load_or_die(const std::string& path) {
    jsant_body* b = nullptr;
    if (jsant_body_load(path.c_str(), &b) != JSANT_OK) {
        std::fprintf(stderr, "error loading %s: %s\n", path.c_str(), jsant_last_error());
        std::exit(1);
    }
    return b;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification toolkit for j-Santalo inequalities"};
    app.require_subcommand(1);

    GlobalOpts g;
    std::vector<std::string> files;
    std::string output_file;

    CLI::App* verify = app.add_subcommand("verify-santalo", "theorem-case campaigns");
    add_globals(verify, g);
    verify->add_option("--mode", g.mode, "unconditional | jk | mixed | general | intervals");

    CLI::App* symmetrize = app.add_subcommand("symmetrize", "Steiner reduction chains");
    add_globals(symmetrize, g);

    CLI::App* search = app.add_subcommand("search", "counterexample search (open cases)");
    add_globals(search, g);
    search->add_option("--mode", g.mode, "random | ball starting tuple");

    CLI::App* radial = app.add_subcommand("radial-check", "radial-function condition");
    add_globals(radial, g);

    CLI::App* functional = app.add_subcommand("functional", "functional-form campaigns");
    add_globals(functional, g);
    functional->add_option("--mode", g.mode, "indicator | exponential | smooth | all");

    CLI::App* polar = app.add_subcommand("polar", "j-polar of bodies from files");
    add_globals(polar, g);
    polar->add_option("files", files, "V-polytope files (the k-1 fixed slots)")->required();
    polar->add_option("-j,--degree", g.j, "form degree");
    polar->add_option("--output", output_file, "write the polar body here");

    CLI::App* volume = app.add_subcommand("volume", "exact volumes of body files");
    add_globals(volume, g);
    volume->add_option("files", files, "V-polytope files")->required();

    CLI::App* ball = app.add_subcommand("ball", "minimized ball functional of a tuple");
    add_globals(ball, g);
    ball->add_option("files", files, "V-polytope files")->required();
    ball->add_option("-j,--degree", g.j, "moment degree");

    CLI11_PARSE(app, argc, argv);

    if (verify->parsed()) return run_campaign("verify-santalo", g);
    if (symmetrize->parsed()) return run_campaign("symmetrize", g);
    if (search->parsed()) return run_campaign("search", g);
    if (radial->parsed()) return run_campaign("radial-check", g);
    if (functional->parsed()) return run_campaign("functional", g);

    std::vector<jsant_body*> bodies;
    for (const std::string& f : files) bodies.push_back(load_or_die(f));
    std::vector<const jsant_body*> handles(bodies.begin(), bodies.end());
    int rc = 0;

    if (volume->parsed()) {
        for (std::size_t i = 0; i < handles.size(); ++i) {
            double v = 0.0;
            if (jsant_body_volume(handles[i], &v) != JSANT_OK) {
                std::fprintf(stderr, "error: %s\n", jsant_last_error());
                rc = 1;
                break;
            }
            std::printf("%s %.17g\n", files[i].c_str(), v);
        }
    } else if (polar->parsed()) {
        jsant_body* result = nullptr;
        if (jsant_polar(handles.data(), handles.size(), g.j, &result) != JSANT_OK) {
            std::fprintf(stderr, "error: %s\n", jsant_last_error());
            rc = 1;
        } else {
            double v = 0.0;
            jsant_body_volume(result, &v);
            std::printf("vertices %zu volume %.17g\n", jsant_body_vertex_count(result), v);
            if (!output_file.empty() &&
                jsant_body_save(result, output_file.c_str()) != JSANT_OK) {
                std::fprintf(stderr, "error: %s\n", jsant_last_error());
                rc = 1;
            }
            jsant_body_free(result);
        }
    } else if (ball->parsed()) {
        double v = 0.0;
        if (jsant_ball_value_min(handles.data(), handles.size(), g.j, g.seed, &v) != JSANT_OK) {
            std::fprintf(stderr, "error: %s\n", jsant_last_error());
            rc = 1;
        } else {
            std::printf("ball_value_min %.17g\n", v);
        }
    }

    for (jsant_body* b : bodies) jsant_body_free(b);
    return rc;
}
