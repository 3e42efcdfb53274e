#pragma once

#include <optional>
#include <string>
#include <vector>

#include "laurent.hpp"

// Built-in inputs addressable by name from the command line.  Knot entries
// carry Alexander polynomials from the standard tables (all with |delta(1)|
// = 1); synthetic entries exercise specific torsion regimes.

namespace augtor {

enum class CatalogKind { knot, link, synthetic };

inline const char* to_string(CatalogKind k) {
    switch (k) {
        case CatalogKind::knot: return "knot";
        case CatalogKind::link: return "link";
        default: return "synthetic";
    }
}

struct CatalogEntry {
    std::string name;
    LaurentPoly delta;
    CatalogKind kind;
    std::optional<long> linking_number;
    std::string provenance;
};

inline const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> table = [] {
        auto poly = [](std::vector<long> asc) {
            std::vector<Int> c(asc.begin(), asc.end());
            return LaurentPoly(std::move(c), 0);
        };
        const std::string rolfsen = "Alexander polynomial from the Rolfsen table";
        std::vector<CatalogEntry> t;
        t.push_back({"3_1", poly({1, -1, 1}), CatalogKind::knot, std::nullopt, rolfsen});
        t.push_back({"4_1", poly({1, -3, 1}), CatalogKind::knot, std::nullopt, rolfsen});
        t.push_back({"5_1", poly({1, -1, 1, -1, 1}), CatalogKind::knot, std::nullopt, rolfsen});
        t.push_back({"5_2", poly({2, -3, 2}), CatalogKind::knot, std::nullopt, rolfsen});
        t.push_back({"6_1", poly({2, -5, 2}), CatalogKind::knot, std::nullopt, rolfsen});
        t.push_back({"6_2", poly({1, -3, 3, -3, 1}), CatalogKind::knot, std::nullopt, rolfsen});
        t.push_back({"6_3", poly({1, -3, 5, -3, 1}), CatalogKind::knot, std::nullopt, rolfsen});
        t.push_back({"7_1", poly({1, -1, 1, -1, 1, -1, 1}), CatalogKind::knot, std::nullopt, rolfsen});
        t.push_back({"7_2", poly({3, -5, 3}), CatalogKind::knot, std::nullopt, rolfsen});
        for (long m : {2L, 6L, 12L}) {
            t.push_back({"ex4.3:m=" + std::to_string(m), Int(m) * poly({-1, 1}),
                         CatalogKind::synthetic, std::nullopt,
                         "cyclic module on m(t-1) with m = " + std::to_string(m) +
                             "; torsion m^(r-1), one free rank"});
        }
        t.push_back({"lehmer", poly({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}),
                     CatalogKind::synthetic, std::nullopt,
                     "Lehmer's polynomial, smallest known Salem Mahler measure"});
        t.push_back({"link:lk=2", poly({1, 0, 1}), CatalogKind::link, 2,
                     "synthetic two-component link stand-in; |delta(1)| equals the linking number"});
        return t;
    }();
    return table;
}

inline const CatalogEntry& catalog_lookup(const std::string& name) {
    for (const auto& e : catalog_entries())
        if (e.name == name) return e;
    std::string msg = "unknown catalog name '" + name + "'; available:";
    for (const auto& e : catalog_entries()) msg += " " + e.name;
    throw domain_error(msg);
}

}  // namespace augtor
