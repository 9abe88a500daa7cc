#include "qc/expression.hpp"

#include "qc/errors.hpp"

#include <cctype>
#include <functional>
#include <unordered_map>

namespace qc {

using Node = Expression::Node;
using Kind = Expression::Kind;

Expression Expression::make(Kind k, std::shared_ptr<const Node> l, std::shared_ptr<const Node> r) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return Expression(std::move(n));
}

Expression Expression::constant(const Rational& value) {
    // Negative literals are stored the way the parser reads them: a negation of a positive literal.
    if (sgn(value) < 0) return -constant(-value);
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->constant = value;
    return Expression(std::move(n));
}

Expression Expression::symbol(int index) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Symbol;
    n->symbol = index;
    return Expression(std::move(n));
}

Expression operator-(const Expression& a) { return Expression::make(Kind::Negate, a.root_, nullptr); }
Expression operator+(const Expression& a, const Expression& b) { return Expression::make(Kind::Add, a.root_, b.root_); }
Expression operator-(const Expression& a, const Expression& b) { return Expression::make(Kind::Sub, a.root_, b.root_); }
Expression operator*(const Expression& a, const Expression& b) { return Expression::make(Kind::Mul, a.root_, b.root_); }
Expression operator/(const Expression& a, const Expression& b) { return Expression::make(Kind::Div, a.root_, b.root_); }

Expression Expression::power(const Expression& base, int exponent) {
    if (exponent < 0) throw std::invalid_argument("negative exponent");
    auto e = make(Kind::Pow, base.root_, nullptr);
    const_cast<Node&>(*e.root_).exponent = exponent;
    return e;
}

namespace {

bool same(const Node* a, const Node* b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
    case Kind::Constant: return a->constant == b->constant;
    case Kind::Symbol: return a->symbol == b->symbol;
    case Kind::Pow: return a->exponent == b->exponent && same(a->lhs.get(), b->lhs.get());
    case Kind::Negate: return same(a->lhs.get(), b->lhs.get());
    default: return same(a->lhs.get(), b->lhs.get()) && same(a->rhs.get(), b->rhs.get());
    }
}

// ---------------------------------------------------------------------------------------------
// Parser

class Parser {
public:
    Parser(std::string_view src, std::span<const std::string> coords) : src_(src), coords_(coords) {}

    Expression parse() {
        auto e = expr();
        skip();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < src_.size() && src_[pos_] == c;
    }
    bool peek_digit() {
        skip();
        return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
    }
    std::string integer() {
        if (!peek_digit()) fail("expected integer");
        auto start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    Expression expr() {
        auto lhs = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                lhs = lhs + term();
            } else if (peek('-')) {
                ++pos_;
                lhs = lhs - term();
            } else {
                return lhs;
            }
        }
    }

    Expression term() {
        auto lhs = factor();
        while (true) {
            if (peek('*')) {
                ++pos_;
                lhs = lhs * factor();
            } else if (peek('/')) {
                ++pos_;
                lhs = lhs / factor();
            } else {
                return lhs;
            }
        }
    }

    Expression factor() {
        bool negate = false;
        if (peek('-')) {
            ++pos_;
            negate = true;
        }
        auto b = base();
        if (peek('^')) {
            ++pos_;
            if (peek('-')) fail("negative exponent not allowed");
            auto digits = integer();
            if (digits.size() > 6) fail("exponent too large");
            b = Expression::power(b, std::stoi(digits));
        }
        return negate ? -b : b;
    }

    Expression base() {
        skip();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto num = integer();
            auto save = pos_;
            if (peek('/')) {
                ++pos_;
                if (peek_digit()) {
                    auto den_at = pos_;
                    auto den = integer();
                    Rational q{mpz_class(num), mpz_class(den)};
                    if (q.get_den() == 0) {
                        pos_ = den_at;
                        fail("zero denominator in rational literal");
                    }
                    q.canonicalize();
                    return Expression::constant(q);
                }
                pos_ = save;
            }
            return Expression::constant(Rational(mpz_class(num)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            auto start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            std::string name(src_.substr(start, pos_ - start));
            for (std::size_t i = 0; i < coords_.size(); ++i)
                if (coords_[i] == name) return Expression::symbol(static_cast<int>(i));
            throw UnknownSymbol(name, start);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view src_;
    std::span<const std::string> coords_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------------------------
// Printer

int precedence(const Node& n) {
    switch (n.kind) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul:
    case Kind::Div: return 2;
    case Kind::Negate: return 3;
    case Kind::Pow: return 4;
    default: return 5;
    }
}

void print(const Node& n, std::span<const std::string> coords, std::string& out);

void print_wrapped(const Node& n, bool wrap, std::span<const std::string> coords, std::string& out) {
    if (wrap) out += '(';
    print(n, coords, out);
    if (wrap) out += ')';
}

bool is_integer_constant(const Node& n) { return n.kind == Kind::Constant && n.constant.get_den() == 1; }

void print(const Node& n, std::span<const std::string> coords, std::string& out) {
    switch (n.kind) {
    case Kind::Constant:
        if (is_integer_constant(n)) {
            out += n.constant.get_num().get_str();
        } else {
            out += '(';
            out += n.constant.get_str();
            out += ')';
        }
        return;
    case Kind::Symbol: out += coords[static_cast<std::size_t>(n.symbol)]; return;
    case Kind::Negate: {
        const Node& a = *n.lhs;
        // The operand of a unary minus must be an atom or atom^k.
        bool atom_pow = a.kind == Kind::Pow && precedence(*a.lhs) == 5;
        out += '-';
        print_wrapped(a, !(precedence(a) == 5 || atom_pow), coords, out);
        return;
    }
    case Kind::Pow: {
        const Node& b = *n.lhs;
        print_wrapped(b, precedence(b) != 5, coords, out);
        out += '^';
        out += std::to_string(n.exponent);
        return;
    }
    case Kind::Add:
    case Kind::Sub:
        print_wrapped(*n.lhs, precedence(*n.lhs) < 1, coords, out);
        out += n.kind == Kind::Add ? " + " : " - ";
        print_wrapped(*n.rhs, precedence(*n.rhs) <= 1, coords, out);
        return;
    case Kind::Mul:
    case Kind::Div: {
        print_wrapped(*n.lhs, precedence(*n.lhs) < 2, coords, out);
        out += n.kind == Kind::Mul ? '*' : '/';
        // An integer right after '/' or '*' could fuse with a following "/k" into a rational literal.
        bool wrap = precedence(*n.rhs) <= 2 || is_integer_constant(*n.rhs);
        if (n.rhs->kind == Kind::Constant && !is_integer_constant(*n.rhs)) wrap = false; // already parenthesized
        print_wrapped(*n.rhs, wrap, coords, out);
        return;
    }
    }
}

} // namespace

bool operator==(const Expression& a, const Expression& b) { return same(a.root_.get(), b.root_.get()); }

Expression parse_expression(std::string_view source, std::span<const std::string> coordinates) {
    return Parser(source, coordinates).parse();
}

std::string print_expression(const Expression& e, std::span<const std::string> coordinates) {
    std::string out;
    print(e.root(), coordinates, out);
    return out;
}

// ---------------------------------------------------------------------------------------------
// Evaluation

template <class F>
struct JetEvaluator<F>::Impl {
    std::vector<Rational> point;
    int order;
    std::vector<std::string> coords;
    // Structural hash-consing: node -> class id, class key -> id, id -> jet.
    std::unordered_map<const Node*, std::size_t> node_class;
    std::unordered_map<std::string, std::size_t> key_class;
    std::vector<Jet<F>> values;

    std::size_t eval(const Node& n) {
        if (auto it = node_class.find(&n); it != node_class.end()) return it->second;
        std::string key = std::to_string(static_cast<int>(n.kind)) + ':';
        std::size_t l = 0;
        std::size_t r = 0;
        switch (n.kind) {
        case Kind::Constant: key += n.constant.get_str(); break;
        case Kind::Symbol: key += std::to_string(n.symbol); break;
        case Kind::Negate: l = eval(*n.lhs); key += std::to_string(l); break;
        case Kind::Pow:
            l = eval(*n.lhs);
            key += std::to_string(l) + '^' + std::to_string(n.exponent);
            break;
        default:
            l = eval(*n.lhs);
            r = eval(*n.rhs);
            key += std::to_string(l) + ',' + std::to_string(r);
        }
        if (auto it = key_class.find(key); it != key_class.end()) {
            node_class.emplace(&n, it->second);
            return it->second;
        }
        const int dim = static_cast<int>(point.size());
        Jet<F> v;
        switch (n.kind) {
        case Kind::Constant: v = Jet<F>::constant(dim, order, from_rational<F>(n.constant)); break;
        case Kind::Symbol:
            v = Jet<F>::variable(dim, order, n.symbol, from_rational<F>(point[static_cast<std::size_t>(n.symbol)]));
            break;
        case Kind::Negate: v = -values[l]; break;
        case Kind::Add: v = values[l] + values[r]; break;
        case Kind::Sub: v = values[l] - values[r]; break;
        case Kind::Mul: v = values[l] * values[r]; break;
        case Kind::Div:
            if (qc::is_zero(values[r].value())) {
                std::string text;
                print(*n.rhs, coords, text);
                throw DivisionByZero("denominator '" + text + "' vanishes at the sample point");
            }
            v = values[l] / values[r];
            break;
        case Kind::Pow: {
            Jet<F> acc = Jet<F>::constant(dim, order, F(1));
            Jet<F> b = values[l];
            for (int e = n.exponent; e; e >>= 1) {
                if (e & 1) acc = acc * b;
                if (e > 1) b = b * b;
            }
            v = std::move(acc);
            break;
        }
        }
        values.push_back(std::move(v));
        key_class.emplace(std::move(key), values.size() - 1);
        node_class.emplace(&n, values.size() - 1);
        return values.size() - 1;
    }
};

template <class F>
JetEvaluator<F>::JetEvaluator(std::span<const Rational> point, int order, std::span<const std::string> coordinates)
    : impl_(std::make_unique<Impl>()) {
    if (point.size() != coordinates.size())
        throw DimensionMismatch("point has " + std::to_string(point.size()) + " entries, chart has " +
                                std::to_string(coordinates.size()) + " coordinates");
    if (order < 0) throw InsufficientJetOrder("negative jet order");
    impl_->point.assign(point.begin(), point.end());
    impl_->order = order;
    impl_->coords.assign(coordinates.begin(), coordinates.end());
}

template <class F>
JetEvaluator<F>::~JetEvaluator() = default;

template <class F>
Jet<F> JetEvaluator<F>::operator()(const Expression& e) {
    return impl_->values[impl_->eval(e.root())];
}

template class JetEvaluator<Rational>;
template class JetEvaluator<ModP>;

template <class F>
Jet<F> evaluate_jet(const Expression& e, std::span<const Rational> point, int order,
                    std::span<const std::string> coordinates) {
    return JetEvaluator<F>(point, order, coordinates)(e);
}

template Jet<Rational> evaluate_jet<Rational>(const Expression&, std::span<const Rational>, int,
                                              std::span<const std::string>);
template Jet<ModP> evaluate_jet<ModP>(const Expression&, std::span<const Rational>, int,
                                      std::span<const std::string>);

} // namespace qc
