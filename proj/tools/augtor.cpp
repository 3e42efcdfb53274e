#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "augtor/cli.hpp"

// Thin shell around run_command: flag plumbing only, all behavior lives in
// the library so the tests can drive it in-process.

int main(int argc, char** argv) {
    CLI::App app{"exact torsion, Betti, recurrence, and growth reports for modules over Z[t,1/t]"};
    app.require_subcommand(1);

    std::string poly, matrix, name, rspec, pstr;
    std::string method = "auto", format = "table";
    double eps = 1e-9;
    long jobs = 1;

    struct Wants {
        bool matrix = false, r = false, method = false, p = false, eps = false, jobs = false;
    };
    auto add_common = [&](CLI::App* sc, Wants w, bool input) {
        if (input) {
            sc->add_option("--poly", poly, "polynomial, e.g. 't^2-3t+1'");
            sc->add_option("--name", name, "catalog entry name, e.g. '4_1'");
            if (w.matrix) sc->add_option("--matrix", matrix, "presentation matrix JSON file");
        } else {
            sc->add_option("--name", name, "catalog entry name");
        }
        if (w.r) sc->add_option("--r", rspec, "level or range, e.g. '12' or '1..30'");
        if (w.method)
            sc->add_option("--method", method, "torsion route")
                ->check(CLI::IsMember({"auto", "fox", "extended", "snf"}));
        if (w.p) sc->add_option("--p", pstr, "prime for p-component analysis");
        if (w.eps) sc->add_option("--eps", eps, "certification tolerance for root finding");
        if (w.jobs) sc->add_option("--jobs", jobs, "worker threads for level sweeps");
        sc->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"table", "json", "csv"}));
    };

    add_common(app.add_subcommand("betti", "free ranks of M/(t^r-1)M over a level range"),
               {.matrix = true, .r = true, .method = true, .jobs = true}, true);
    add_common(app.add_subcommand("torsion", "torsion orders b_r over a level range"),
               {.matrix = true, .r = true, .method = true, .jobs = true}, true);
    add_common(app.add_subcommand("reduced", "reduced torsion and the delta invariants"),
               {.r = true, .jobs = true}, true);
    add_common(app.add_subcommand("recurrence", "exact linear recurrence for the torsion sequence"),
               {}, true);
    add_common(app.add_subcommand("growth", "Mahler measure and growth-rate samples"),
               {.r = true, .p = true, .eps = true}, true);
    add_common(app.add_subcommand("pgrowth", "p-component growth samples against the content target"),
               {.r = true, .p = true}, true);
    add_common(app.add_subcommand("probe-square", "square and probable-prime probe of b_r"),
               {.r = true, .jobs = true}, true);
    add_common(app.add_subcommand("catalog", "list built-in polynomials"), {}, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* sc = app.get_subcommands().front();
    auto given = [&](const std::string& flag) {
        const CLI::Option* o = sc->get_option_no_throw(flag);
        return o != nullptr && o->count() > 0;
    };
    augtor::CommandConfig cfg;
    cfg.subcommand = sc->get_name();
    if (given("--poly")) cfg.poly = poly;
    if (given("--matrix")) cfg.matrix = matrix;
    if (given("--name")) cfg.name = name;
    if (given("--r") && !augtor::parse_r_range(rspec, cfg.r_lo, cfg.r_hi)) {
        std::cerr << "usage error: --r wants 'A' or 'A..B'\n";
        return 2;
    }
    if (auto m = augtor::parse_method(method)) cfg.method = *m;
    if (auto f = augtor::parse_format(format)) cfg.format = *f;
    if (given("--p")) {
        try {
            cfg.p = augtor::Int(pstr);
        } catch (const std::invalid_argument&) {
            std::cerr << "usage error: --p wants an integer\n";
            return 2;
        }
    }
    cfg.eps = eps;
    cfg.jobs = jobs;
    return augtor::run_command(cfg, std::cout, std::cerr);
}
