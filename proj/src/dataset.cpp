#include "mosr/dataset.hpp"

#include <fstream>

#include <fmt/core.h>

#include "mosr/errors.hpp"

namespace mosr {

void Dataset::validate() const
{
    if (variable_names.size() != columns.size()) {
        throw UsageError(fmt::format("{} variable names for {} columns", variable_names.size(), columns.size()));
    }
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != target.size()) {
            throw UsageError(fmt::format("column '{}' has {} rows, target has {}", variable_names[j],
                                         columns[j].size(), target.size()));
        }
    }
    for (auto r : { train, test }) {
        if (r.begin > r.end || r.end > rows()) {
            throw UsageError(fmt::format("row range [{}, {}) exceeds {} rows", r.begin, r.end, rows()));
        }
    }
    bool overlap = !train.empty() && !test.empty() && train.begin < test.end && test.begin < train.end;
    if (overlap) {
        throw UsageError("training and test partitions overlap");
    }
}

void write_csv(const Dataset& data, const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        throw CsvError(fmt::format("cannot open '{}' for writing", path));
    }
    for (const auto& name : data.variable_names) {
        out << name << ',';
    }
    out << data.target_name << '\n';
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (const auto& column : data.columns) {
            out << fmt::format("{}", column[i]) << ',';
        }
        out << fmt::format("{}", data.target[i]) << '\n';
    }
    if (!out) {
        throw CsvError(fmt::format("failed writing '{}'", path));
    }
}

} // namespace mosr
