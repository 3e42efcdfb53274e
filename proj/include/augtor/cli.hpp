#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "catalog.hpp"
#include "growth.hpp"
#include "io.hpp"
#include "parse.hpp"
#include "recurrence.hpp"
#include "report.hpp"
#include "torsion.hpp"

// Subcommand dispatch shared by the binary and the tests.  Exit codes:
// 0 success, 1 computation failed, 2 the invocation itself was unusable.

namespace augtor {

enum class OutputFormat { table, json, csv };

struct CommandConfig {
    std::string subcommand;  // betti torsion reduced recurrence growth pgrowth probe-square catalog
    std::optional<std::string> poly;
    std::optional<std::string> matrix;
    std::optional<std::string> name;
    long r_lo = 1;
    long r_hi = 1;
    TorsionMethod method = TorsionMethod::automatic;
    std::optional<Int> p;
    double eps = 1e-9;
    OutputFormat format = OutputFormat::table;
    long jobs = 1;
};

inline std::optional<TorsionMethod> parse_method(const std::string& s) {
    if (s == "auto") return TorsionMethod::automatic;
    if (s == "fox") return TorsionMethod::fox;
    if (s == "extended") return TorsionMethod::extended;
    if (s == "snf") return TorsionMethod::snf;
    return std::nullopt;
}

inline std::optional<OutputFormat> parse_format(const std::string& s) {
    if (s == "table") return OutputFormat::table;
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    return std::nullopt;
}

/// "A..B" or a single "A"; false when either piece is not an integer.
inline bool parse_r_range(const std::string& text, long& lo, long& hi) {
    auto num = [](const std::string& part, long& v) {
        if (part.empty()) return false;
        char* end = nullptr;
        v = std::strtol(part.c_str(), &end, 10);
        return end != nullptr && *end == '\0';
    };
    std::size_t dots = text.find("..");
    if (dots == std::string::npos) {
        if (!num(text, lo)) return false;
        hi = lo;
        return true;
    }
    return num(text.substr(0, dots), lo) && num(text.substr(dots + 2), hi);
}

namespace detail {

// Fan r_lo..r_hi out over worker threads; rows come back in ascending r
// regardless of scheduling, and the first failure wins.
template <typename Row, typename F>
std::vector<Row> sweep_rows(long lo, long hi, long jobs, F f) {
    long n = hi - lo + 1;
    std::vector<Row> rows(static_cast<std::size_t>(n));
    long workers = std::min(jobs, n);
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = f(lo + i);
        return rows;
    }
    std::atomic<long> next{0};
    std::mutex mu;
    std::exception_ptr first;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (long w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                long i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    rows[static_cast<std::size_t>(i)] = f(lo + i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(mu);
                    if (!first) first = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
    return rows;
}

inline const char* sign_mode_name(SignMode m) {
    return m == SignMode::alternating ? "alternating" : "constant";
}

inline void emit_recurrence(std::ostream& out, const RecurrenceSpec& s, OutputFormat format) {
    switch (format) {
        case OutputFormat::csv:
            out << "k,coefficient\n";
            for (std::size_t k = 0; k < s.coefficients.size(); ++k)
                out << k << ',' << s.coefficients[k].get_str() << '\n';
            break;
        case OutputFormat::json: {
            out << "{\"coefficients\":[";
            for (std::size_t k = 0; k < s.coefficients.size(); ++k)
                out << (k ? "," : "") << json_string(s.coefficients[k].get_str());
            out << "],\"sign_mode\":" << json_string(sign_mode_name(s.sign_mode))
                << ",\"seed_start\":" << s.seed_start << ",\"seed\":[";
            for (std::size_t k = 0; k < s.seed.size(); ++k)
                out << (k ? "," : "") << json_string(s.seed[k].get_str());
            out << "]}\n";
            break;
        }
        case OutputFormat::table:
            out << "order\t" << s.order() << '\n';
            out << "sign_mode\t" << sign_mode_name(s.sign_mode) << '\n';
            out << "coefficients";
            for (const auto& c : s.coefficients) out << '\t' << c.get_str();
            out << '\n';
            out << "seed_start\t" << s.seed_start << '\n';
            out << "seed";
            for (const auto& v : s.seed) out << '\t' << v.get_str();
            out << '\n';
            break;
    }
}

inline void emit_growth(std::ostream& out, const GrowthReport& g, OutputFormat format) {
    switch (format) {
        case OutputFormat::csv:
            out << (g.p ? "r,sample,p_sample\n" : "r,sample\n");
            for (std::size_t i = 0; i < g.samples.size(); ++i) {
                out << g.samples[i].first << ',' << fmt_real(g.samples[i].second);
                if (g.p) out << ',' << fmt_real(g.p_samples[i].second);
                out << '\n';
            }
            break;
        case OutputFormat::json:
            out << "{\"mahler\":" << fmt_real(g.mahler.value) << ",\"bound\":"
                << fmt_real(g.mahler.bound) << ",\"samples\":[";
            for (std::size_t i = 0; i < g.samples.size(); ++i)
                out << (i ? "," : "") << '[' << g.samples[i].first << ','
                    << fmt_real(g.samples[i].second) << ']';
            out << ']';
            if (g.p) {
                out << ",\"p\":" << json_string(g.p->get_str()) << ",\"content_p\":"
                    << json_string(g.content_p->get_str()) << ",\"p_samples\":[";
                for (std::size_t i = 0; i < g.p_samples.size(); ++i)
                    out << (i ? "," : "") << '[' << g.p_samples[i].first << ','
                        << fmt_real(g.p_samples[i].second) << ']';
                out << ']';
            }
            out << "}\n";
            break;
        case OutputFormat::table:
            out << "mahler\t" << fmt_real(g.mahler.value) << '\n';
            out << "bound\t" << fmt_real(g.mahler.bound) << '\n';
            if (g.content_p) out << "content_p\t" << g.content_p->get_str() << '\n';
            out << (g.p ? "r\tsample\tp_sample\n" : "r\tsample\n");
            for (std::size_t i = 0; i < g.samples.size(); ++i) {
                out << g.samples[i].first << '\t' << fmt_real(g.samples[i].second);
                if (g.p) out << '\t' << fmt_real(g.p_samples[i].second);
                out << '\n';
            }
            break;
    }
}

inline void emit_pgrowth(std::ostream& out, const PGrowthFragment& f, OutputFormat format) {
    switch (format) {
        case OutputFormat::csv:
            out << "r,p_sample\n";
            for (const auto& [r, v] : f.samples) out << r << ',' << fmt_real(v) << '\n';
            break;
        case OutputFormat::json:
            out << "{\"target\":" << json_string(f.target.get_str()) << ",\"final_gap\":"
                << fmt_real(f.final_gap) << ",\"samples\":[";
            for (std::size_t i = 0; i < f.samples.size(); ++i)
                out << (i ? "," : "") << '[' << f.samples[i].first << ','
                    << fmt_real(f.samples[i].second) << ']';
            out << "]}\n";
            break;
        case OutputFormat::table:
            out << "target\t" << f.target.get_str() << '\n';
            out << "final_gap\t" << fmt_real(f.final_gap) << '\n';
            out << "r\tp_sample\n";
            for (const auto& [r, v] : f.samples) out << r << '\t' << fmt_real(v) << '\n';
            break;
    }
}

struct ProbeRow {
    long r = 0;
    SquarePrimeProbe probe;
};

inline void emit_probes(std::ostream& out, const std::vector<ProbeRow>& rows,
                        OutputFormat format) {
    switch (format) {
        case OutputFormat::csv:
            out << "r,is_square,sqrt_digits,sqrt_probable_prime\n";
            for (const auto& row : rows) {
                out << row.r << ',' << (row.probe.is_square ? "true" : "false") << ',';
                if (row.probe.sqrt_digits) out << *row.probe.sqrt_digits;
                out << ',';
                if (row.probe.sqrt_probable_prime)
                    out << (*row.probe.sqrt_probable_prime ? "true" : "false");
                out << '\n';
            }
            break;
        case OutputFormat::json:
            out << "{\"rows\":[";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto& row = rows[i];
                if (i) out << ',';
                out << "{\"r\":" << row.r << ",\"is_square\":"
                    << (row.probe.is_square ? "true" : "false");
                if (row.probe.sqrt_digits) out << ",\"sqrt_digits\":" << *row.probe.sqrt_digits;
                if (row.probe.sqrt_probable_prime)
                    out << ",\"sqrt_probable_prime\":"
                        << (*row.probe.sqrt_probable_prime ? "true" : "false");
                out << '}';
            }
            out << "]}\n";
            break;
        case OutputFormat::table:
            out << "r\tis_square\tsqrt_digits\tsqrt_probable_prime\n";
            for (const auto& row : rows) {
                out << row.r << '\t' << (row.probe.is_square ? "true" : "false") << '\t'
                    << (row.probe.sqrt_digits ? std::to_string(*row.probe.sqrt_digits) : "-")
                    << '\t';
                if (row.probe.sqrt_probable_prime)
                    out << (*row.probe.sqrt_probable_prime ? "true" : "false");
                else
                    out << '-';
                out << '\n';
            }
            break;
    }
}

inline void emit_catalog(std::ostream& out, const std::vector<const CatalogEntry*>& entries,
                         OutputFormat format) {
    switch (format) {
        case OutputFormat::csv:
            out << "name,kind,delta,linking_number\n";
            for (const auto* e : entries) {
                out << e->name << ',' << to_string(e->kind) << ',' << print_poly(e->delta) << ',';
                if (e->linking_number) out << *e->linking_number;
                out << '\n';
            }
            break;
        case OutputFormat::json:
            out << "{\"entries\":[";
            for (std::size_t i = 0; i < entries.size(); ++i) {
                const auto* e = entries[i];
                if (i) out << ',';
                out << "{\"name\":" << json_string(e->name) << ",\"kind\":"
                    << json_string(to_string(e->kind)) << ",\"delta\":"
                    << json_string(print_poly(e->delta));
                if (e->linking_number) out << ",\"linking_number\":" << *e->linking_number;
                out << ",\"provenance\":" << json_string(e->provenance) << '}';
            }
            out << "]}\n";
            break;
        case OutputFormat::table:
            out << "name\tkind\tdelta\tlinking\tprovenance\n";
            for (const auto* e : entries) {
                out << e->name << '\t' << to_string(e->kind) << '\t' << print_poly(e->delta)
                    << '\t'
                    << (e->linking_number ? std::to_string(*e->linking_number) : "-") << '\t'
                    << e->provenance << '\n';
            }
            break;
    }
}

}  // namespace detail

inline int run_command(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    static const std::vector<std::string> known = {"betti",  "torsion", "reduced",      "recurrence",
                                                   "growth", "pgrowth", "probe-square", "catalog"};
    auto usage = [&err](const std::string& msg) {
        err << "usage error: " << msg << '\n';
        return 2;
    };

    bool recognized = false;
    for (const auto& s : known) recognized = recognized || s == cfg.subcommand;
    if (!recognized) return usage("unknown subcommand '" + cfg.subcommand + "'");

    int inputs = (cfg.poly ? 1 : 0) + (cfg.matrix ? 1 : 0) + (cfg.name ? 1 : 0);
    bool needs_delta = cfg.subcommand == "reduced" || cfg.subcommand == "recurrence" ||
                       cfg.subcommand == "growth" || cfg.subcommand == "pgrowth" ||
                       cfg.subcommand == "probe-square";
    if (cfg.subcommand == "catalog") {
        if (cfg.poly || cfg.matrix) return usage("catalog takes at most --name");
    } else if (inputs == 0) {
        return usage("need exactly one input: --poly, --matrix, or --name");
    } else if (inputs > 1) {
        return usage("--poly, --matrix, and --name are mutually exclusive");
    } else if (needs_delta && cfg.matrix) {
        return usage(cfg.subcommand + " needs a polynomial input (--poly or --name)");
    }
    if (cfg.r_lo < 1 || cfg.r_hi < cfg.r_lo) return usage("--r needs 1 <= lo <= hi");
    if (!(cfg.eps > 0)) return usage("--eps must be positive");
    if (cfg.jobs < 1) return usage("--jobs needs at least 1");
    if (cfg.subcommand == "pgrowth" && !cfg.p) return usage("pgrowth needs --p");

    if (cfg.subcommand == "catalog") {
        std::vector<const CatalogEntry*> list;
        if (cfg.name) {
            try {
                list.push_back(&catalog_lookup(*cfg.name));
            } catch (const error& e) {
                return usage(e.what());
            }
        } else {
            for (const auto& e : catalog_entries()) list.push_back(&e);
        }
        detail::emit_catalog(out, list, cfg.format);
        return 0;
    }

    // Resolution failures are the caller's problem; computation failures are not.
    std::optional<LaurentPoly> delta;
    std::optional<PresentationMatrix> pm;
    try {
        if (cfg.poly) delta = parse_poly(*cfg.poly);
        if (cfg.name) delta = catalog_lookup(*cfg.name).delta;
        if (cfg.matrix)
            pm.emplace(load_presentation(*cfg.matrix));
        else
            pm.emplace(PresentationMatrix::cyclic(*delta));
    } catch (const error& e) {
        return usage(e.what());
    }

    try {
        if (cfg.subcommand == "betti" || cfg.subcommand == "torsion") {
            auto rows = detail::sweep_rows<TorsionProfile>(
                cfg.r_lo, cfg.r_hi, cfg.jobs,
                [&](long r) { return torsion_profile(*pm, r, cfg.method); });
            switch (cfg.format) {
                case OutputFormat::csv: write_profile_csv(out, rows); break;
                case OutputFormat::json: write_profile_json(out, rows); break;
                case OutputFormat::table: write_profile_table(out, rows); break;
            }
        } else if (cfg.subcommand == "reduced") {
            auto rows = detail::sweep_rows<ReducedTorsionProfile>(
                cfg.r_lo, cfg.r_hi, cfg.jobs, [&](long r) { return reduced_analysis(*delta, r); });
            switch (cfg.format) {
                case OutputFormat::csv: write_reduced_csv(out, rows); break;
                case OutputFormat::json: write_reduced_json(out, rows); break;
                case OutputFormat::table: write_reduced_table(out, rows); break;
            }
        } else if (cfg.subcommand == "recurrence") {
            detail::emit_recurrence(out, torsion_recurrence(*delta), cfg.format);
        } else if (cfg.subcommand == "growth") {
            std::vector<long> probes;
            for (long r = cfg.r_lo; r <= cfg.r_hi; ++r) probes.push_back(r);
            detail::emit_growth(out, growth_report(*delta, probes, cfg.eps, cfg.p), cfg.format);
        } else if (cfg.subcommand == "pgrowth") {
            std::vector<std::pair<long, Int>> seq;
            for (long r = cfg.r_lo; r <= cfg.r_hi; ++r)
                seq.emplace_back(r, torsion_formula(*delta, r));
            detail::emit_pgrowth(out, p_growth(seq, *cfg.p, *delta), cfg.format);
        } else {  // probe-square
            auto rows = detail::sweep_rows<detail::ProbeRow>(
                cfg.r_lo, cfg.r_hi, cfg.jobs, [&](long r) {
                    return detail::ProbeRow{r, square_prime_probe(torsion_formula(*delta, r))};
                });
            detail::emit_probes(out, rows, cfg.format);
        }
        return 0;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace augtor
