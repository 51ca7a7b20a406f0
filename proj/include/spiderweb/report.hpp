#pragma once

// Experiment output: named scalars, CSV tables and assertion flags.

#include <fstream>
#include <stdexcept>
#include <type_traits>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace spiderweb {

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    template <class... Ts>
    void add(const Ts&... cells) {
        rows.push_back({format(cells)...});
    }

    template <class T>
    static std::string format(const T& v) {
        if constexpr (std::is_same_v<T, std::string>) {
            return v;
        } else if constexpr (std::is_convertible_v<T, const char*>) {
            return std::string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
            return v ? "true" : "false";
        } else if constexpr (std::is_floating_point_v<T>) {
            std::ostringstream os;
            os << std::setprecision(17) << v;
            return os.str();
        } else {
            return std::to_string(v);
        }
    }

    void write_csv(std::ostream& os) const {
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) os << ',';
                const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
                if (!quote) {
                    os << cells[i];
                    continue;
                }
                os << '"';
                for (char c : cells[i]) os << (c == '"' ? "\"\"" : std::string(1, c));
                os << '"';
            }
            os << '\n';
        };
        line(columns);
        for (const auto& r : rows) line(r);
    }

    void write_csv_file(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write '" + path + "'");
        write_csv(out);
    }
};

struct Assertion {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ExperimentReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> scalars;
    std::vector<Table> tables;
    std::vector<Assertion> assertions;

    template <class T>
    void scalar(const std::string& key, const T& v) {
        scalars.emplace_back(key, Table::format(v));
    }

    void check(const std::string& what, bool ok, const std::string& detail = {}) {
        assertions.push_back({what, ok, detail});
    }

    bool passed() const {
        for (const auto& a : assertions) {
            if (!a.passed) return false;
        }
        return true;
    }

    Table scalar_table() const {
        Table t{name + "_scalars", {"name", "value"}, {}};
        for (const auto& [k, v] : scalars) t.add(k, v);
        return t;
    }
};

}  // namespace spiderweb
