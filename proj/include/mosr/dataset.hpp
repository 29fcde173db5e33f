#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mosr {

// Half-open row interval [begin, end).
struct Range {
    std::size_t begin { 0 };
    std::size_t end { 0 };

    [[nodiscard]] constexpr auto size() const noexcept -> std::size_t { return end - begin; }
    [[nodiscard]] constexpr auto empty() const noexcept -> bool { return end <= begin; }
    friend constexpr auto operator==(Range, Range) noexcept -> bool = default;
};

struct Dataset {
    std::vector<std::string> variable_names;
    std::vector<std::vector<double>> columns; // one column per variable
    std::string target_name { "y" };
    std::vector<double> target;
    Range train;
    Range test;

    [[nodiscard]] auto rows() const noexcept -> std::size_t { return target.size(); }
    [[nodiscard]] auto n_variables() const noexcept -> std::size_t { return columns.size(); }
    [[nodiscard]] auto target_slice(Range r) const -> std::span<const double>
    {
        return std::span<const double>(target).subspan(r.begin, r.size());
    }

    // Throws UsageError when columns are ragged, partitions overlap or exceed the row count.
    void validate() const;

    friend auto operator==(const Dataset&, const Dataset&) -> bool = default;
};

// Writes header + rows (inputs then target) as plain comma-separated text.
void write_csv(const Dataset& data, const std::string& path);

} // namespace mosr
