#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "torsion.hpp"

// Deterministic report emission: identical config yields byte-identical
// output.  Reals go through one %.9g formatter, big integers through
// get_str(), and JSON is written by hand with a fixed field order.

namespace augtor {

inline std::string fmt_real(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline std::string json_string(const std::string& s) { return '"' + json_escape(s) + '"'; }

inline void write_profile_csv(std::ostream& out, const std::vector<TorsionProfile>& rows) {
    out << "r,betti,torsion,method\n";
    for (const auto& p : rows)
        out << p.r << ',' << p.betti << ',' << p.torsion.get_str() << ',' << p.method << '\n';
}

inline void write_profile_table(std::ostream& out, const std::vector<TorsionProfile>& rows) {
    out << "r\tbetti\ttorsion\tmethod\n";
    for (const auto& p : rows)
        out << p.r << '\t' << p.betti << '\t' << p.torsion.get_str() << '\t' << p.method << '\n';
}

inline void write_profile_json(std::ostream& out, const std::vector<TorsionProfile>& rows) {
    out << "{\"rows\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& p = rows[i];
        if (i) out << ',';
        out << "{\"r\":" << p.r << ",\"betti\":" << p.betti << ",\"torsion\":"
            << json_string(p.torsion.get_str()) << ",\"method\":" << json_string(p.method) << '}';
    }
    out << "]}\n";
}

inline void write_reduced_csv(std::ostream& out, const std::vector<ReducedTorsionProfile>& rows) {
    out << "r,betti,torsion,method\n";
    for (const auto& p : rows)
        out << p.r << ',' << p.betti_reduced << ',' << p.torsion_reduced.get_str() << ",reduced\n";
}

inline void write_reduced_table(std::ostream& out, const std::vector<ReducedTorsionProfile>& rows) {
    out << "r\tbetti\ttorsion\tdelta\tdelta_prime\n";
    for (const auto& p : rows) {
        out << p.r << '\t' << p.betti_reduced << '\t' << p.torsion_reduced.get_str() << '\t';
        out << (p.delta ? p.delta->get_str() : "-") << '\t';
        out << (p.delta_prime ? p.delta_prime->get_str() : "-") << '\n';
    }
}

inline void write_reduced_json(std::ostream& out, const std::vector<ReducedTorsionProfile>& rows) {
    out << "{\"rows\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& p = rows[i];
        if (i) out << ',';
        out << "{\"r\":" << p.r << ",\"betti\":" << p.betti_reduced << ",\"torsion\":"
            << json_string(p.torsion_reduced.get_str());
        if (p.delta) out << ",\"delta\":" << json_string(p.delta->get_str());
        if (p.delta_prime) out << ",\"delta_prime\":" << json_string(p.delta_prime->get_str());
        out << '}';
    }
    out << "]}\n";
}

}  // namespace augtor
