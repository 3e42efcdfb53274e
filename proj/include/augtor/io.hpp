#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "exact_linear.hpp"
#include "parse.hpp"

// Presentation matrices on disk: a JSON object with an "entries" array of
// rows, each entry either a polynomial string ("t^2-3t+1") or a plain
// integer.  Optional "rows"/"cols" fields cross-check the entry grid.

namespace augtor {

inline PresentationMatrix parse_presentation_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw load_error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("entries"))
        throw load_error("expected an object with an \"entries\" array");
    const nlohmann::json& entries = doc["entries"];
    if (!entries.is_array() || entries.empty())
        throw load_error("\"entries\" must be a nonempty array of rows");

    std::vector<std::vector<LaurentPoly>> grid;
    grid.reserve(entries.size());
    std::size_t width = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const nlohmann::json& row = entries[i];
        if (!row.is_array() || row.empty())
            throw load_error("row " + std::to_string(i) + " must be a nonempty array");
        if (i == 0) {
            width = row.size();
        } else if (row.size() != width) {
            throw load_error("row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                             " entries, expected " + std::to_string(width));
        }
        std::vector<LaurentPoly> cells;
        cells.reserve(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) {
            const nlohmann::json& cell = row[j];
            std::string at = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
            if (cell.is_string()) {
                try {
                    cells.push_back(parse_poly(cell.get<std::string>()));
                } catch (const error& e) {
                    throw load_error(at + ": " + e.what());
                }
            } else if (cell.is_number_integer()) {
                cells.push_back(LaurentPoly({Int(static_cast<long>(cell.get<long long>()))}, 0));
            } else if (cell.is_number_unsigned()) {
                cells.push_back(
                    LaurentPoly({Int(static_cast<unsigned long>(cell.get<unsigned long long>()))}, 0));
            } else {
                throw load_error(at + " must be a polynomial string or an integer");
            }
        }
        grid.push_back(std::move(cells));
    }

    if (doc.contains("rows") &&
        (!doc["rows"].is_number_integer() || doc["rows"].get<long long>() != static_cast<long long>(grid.size())))
        throw load_error("\"rows\" does not match the entry grid (" + std::to_string(grid.size()) +
                         " rows present)");
    if (doc.contains("cols") &&
        (!doc["cols"].is_number_integer() || doc["cols"].get<long long>() != static_cast<long long>(width)))
        throw load_error("\"cols\" does not match the entry grid (" + std::to_string(width) +
                         " columns present)");

    return PresentationMatrix(std::move(grid));
}

inline PresentationMatrix load_presentation(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw load_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_presentation_json(buf.str());
}

}  // namespace augtor
