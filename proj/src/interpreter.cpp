#include "mosr/interpreter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "mosr/errors.hpp"

namespace mosr {

namespace {

constexpr std::size_t kBatch = 128;

template <typename F>
void apply_unary(double* out, const double* in, std::size_t n, F f)
{
    for (std::size_t r = 0; r < n; ++r) {
        out[r] = f(in[r]);
    }
}

} // namespace

auto evaluate(const Tree& tree, std::span<const std::vector<double>> columns, Range rows) -> std::vector<double>
{
    auto nodes = tree.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].symbol == Symbol::Variable && nodes[i].variable >= columns.size()) {
            throw StructureError(fmt::format("variable x{} at node {} is out of range ({} columns)",
                                             nodes[i].variable, i, columns.size()));
        }
    }
    for (const auto& column : columns) {
        if (column.size() < rows.end) {
            throw UsageError(fmt::format("row range end {} exceeds column length {}", rows.end, column.size()));
        }
    }

    std::vector<double> result(rows.size());
    std::vector<double> buffer(nodes.size() * kBatch);
    auto slot = [&](std::size_t i) { return buffer.data() + i * kBatch; };

    for (std::size_t start = rows.begin; start < rows.end; start += kBatch) {
        std::size_t n = std::min(kBatch, rows.end - start);
        for (std::size_t i = nodes.size(); i-- > 0;) {
            const auto& node = nodes[i];
            double* out = slot(i);
            const double* first = node.arity > 0 ? slot(i + 1) : nullptr;
            switch (node.symbol) {
            case Symbol::Constant:
                std::fill_n(out, n, node.value);
                break;
            case Symbol::Variable:
                std::copy_n(columns[node.variable].data() + start, n, out);
                break;
            case Symbol::Add:
            case Symbol::Sub:
            case Symbol::Mul:
            case Symbol::Div: {
                std::copy_n(first, n, out);
                std::size_t c = i + 1 + nodes[i + 1].size;
                for (std::size_t k = 1; k < node.arity; ++k, c += nodes[c].size) {
                    const double* in = slot(c);
                    switch (node.symbol) {
                    case Symbol::Add: for (std::size_t r = 0; r < n; ++r) { out[r] += in[r]; } break;
                    case Symbol::Sub: for (std::size_t r = 0; r < n; ++r) { out[r] -= in[r]; } break;
                    case Symbol::Mul: for (std::size_t r = 0; r < n; ++r) { out[r] *= in[r]; } break;
                    default: for (std::size_t r = 0; r < n; ++r) { out[r] /= in[r]; } break;
                    }
                }
                break;
            }
            case Symbol::Sin: apply_unary(out, first, n, [](double v) { return std::sin(v); }); break;
            case Symbol::Cos: apply_unary(out, first, n, [](double v) { return std::cos(v); }); break;
            case Symbol::Tan: apply_unary(out, first, n, [](double v) { return std::tan(v); }); break;
            case Symbol::Exp: apply_unary(out, first, n, [](double v) { return std::exp(v); }); break;
            case Symbol::Log: apply_unary(out, first, n, [](double v) { return v > 0.0 ? std::log(v) : std::numeric_limits<double>::quiet_NaN(); }); break;
            case Symbol::Square: apply_unary(out, first, n, [](double v) { return v * v; }); break;
            case Symbol::Sqrt: apply_unary(out, first, n, [](double v) { return std::sqrt(v); }); break;
            }
        }
        std::copy_n(slot(0), n, result.data() + (start - rows.begin));
    }
    return result;
}

auto evaluate(const Tree& tree, const Dataset& data, Range rows) -> std::vector<double>
{
    if (rows.end > data.rows()) {
        throw UsageError(fmt::format("row range end {} exceeds {} rows", rows.end, data.rows()));
    }
    return evaluate(tree, std::span<const std::vector<double>>(data.columns), rows);
}

} // namespace mosr
