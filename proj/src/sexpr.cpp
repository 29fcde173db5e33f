#include "mosr/sexpr.hpp"

#include <cctype>
#include <charconv>
#include <system_error>

#include <fmt/core.h>

#include "mosr/errors.hpp"

namespace mosr {

namespace {

void format_constant(std::string& out, double value)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, end);
}

void write_node(std::string& out, const Tree& tree, std::size_t i)
{
    const auto& node = tree[i];
    switch (node.symbol) {
    case Symbol::Constant:
        format_constant(out, node.value);
        return;
    case Symbol::Variable:
        out += 'x';
        out += std::to_string(node.variable);
        return;
    default:
        break;
    }
    out += '(';
    out += symbol_name(node.symbol);
    for (auto c : tree.children(i)) {
        out += ' ';
        write_node(out, tree, c);
    }
    out += ')';
}

class Parser {
public:
    explicit Parser(std::string_view text)
        : text_(text)
    {
    }

    auto parse() -> Tree
    {
        skip_space();
        if (pos_ >= text_.size()) {
            throw ParseError("empty expression", pos_);
        }
        parse_expr();
        skip_space();
        if (pos_ < text_.size()) {
            throw ParseError(fmt::format("unexpected trailing input '{}'", text_[pos_]), pos_);
        }
        return Tree(std::move(nodes_));
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    auto atom() -> std::string_view
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')'
               && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    void parse_expr()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            throw ParseError("unexpected end of input, missing ')'", pos_);
        }
        if (text_[pos_] == ')') {
            throw ParseError("unbalanced ')'", pos_);
        }
        if (text_[pos_] != '(') {
            parse_leaf();
            return;
        }

        std::size_t open = pos_++;
        skip_space();
        std::size_t symbol_pos = pos_;
        auto name = atom();
        if (name.empty()) {
            throw ParseError("expected a function symbol after '('", symbol_pos);
        }
        auto symbol = parse_symbol(name);
        if (!symbol) {
            throw ParseError(fmt::format("unknown symbol '{}'", name), symbol_pos);
        }
        std::size_t self = nodes_.size();
        nodes_.push_back(Node::function(*symbol, 0));

        std::size_t arity = 0;
        for (;;) {
            skip_space();
            if (pos_ >= text_.size()) {
                throw ParseError("unexpected end of input, missing ')'", open);
            }
            if (text_[pos_] == ')') {
                ++pos_;
                break;
            }
            parse_expr();
            ++arity;
        }

        bool ok = is_unary(*symbol) ? arity == 1 : arity >= 2;
        if (!ok) {
            throw ParseError(fmt::format("'{}' takes {} argument{}, got {}", name,
                                         is_unary(*symbol) ? "exactly 1" : "at least 2",
                                         is_unary(*symbol) ? "" : "s", arity),
                             open);
        }
        nodes_[self].arity = static_cast<std::uint16_t>(arity);
    }

    void parse_leaf()
    {
        std::size_t start = pos_;
        auto token = atom();
        if (token.size() > 1 && token[0] == 'x'
            && std::isdigit(static_cast<unsigned char>(token[1]))) {
            std::uint32_t index = 0;
            auto [end, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), index);
            if (ec != std::errc() || end != token.data() + token.size()) {
                throw ParseError(fmt::format("malformed variable '{}'", token), start);
            }
            nodes_.push_back(Node::var(index));
            return;
        }
        if (parse_symbol(token)) {
            throw ParseError(fmt::format("function '{}' must be applied inside parentheses", token), start);
        }
        double value = 0.0;
        auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || end != token.data() + token.size()) {
            throw ParseError(fmt::format("unknown symbol '{}'", token), start);
        }
        nodes_.push_back(Node::constant(value));
    }

    std::string_view text_;
    std::size_t pos_ { 0 };
    std::vector<Node> nodes_;
};

} // namespace

auto to_sexpr(const Tree& tree) -> std::string
{
    std::string out;
    out.reserve(tree.length() * 6);
    write_node(out, tree, 0);
    return out;
}

auto parse_sexpr(std::string_view text) -> Tree
{
    return Parser(text).parse();
}

} // namespace mosr
