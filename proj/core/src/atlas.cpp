#include "qc/atlas.hpp"

#include "qc/cone.hpp"
#include "qc/errors.hpp"
#include "qc/sampling.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace qc {

namespace {

// Row-major 4x4.
const std::vector<int> kUnitI = {0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0};
const std::vector<int> kUnitJ = {0, 0, -1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, -1, 0, 0};
const std::vector<int> kUnitK = {0, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0};

/// Entry (r, c) of the block-diagonal action on R^{4m}.
int block_entry(int l, int r, int c) {
    if (r / 4 != c / 4) return 0;
    return quaternion_unit(l)[static_cast<std::size_t>((r % 4) * 4 + c % 4)];
}

Expression scaled(int coeff, const Expression& e) {
    if (coeff == 1) return e;
    if (coeff == -1) return -e;
    return Expression::constant(Rational(coeff)) * e;
}

/// Sum of signed terms without a leading zero.
Expression signed_sum(const std::vector<std::pair<int, Expression>>& terms) {
    if (terms.empty()) return Expression::constant(Rational(0));
    Expression acc = scaled(terms[0].first, terms[0].second);
    for (std::size_t i = 1; i < terms.size(); ++i) {
        const auto& [c, e] = terms[i];
        if (c == 1)
            acc = acc + e;
        else if (c == -1)
            acc = acc - e;
        else
            acc = acc + scaled(c, e);
    }
    return acc;
}

void validate_sphere(const QcChart& chart) {
    PointSampler sampler(20240607, 3);
    for (int p = 0; p < 5; ++p) {
        const auto point = sampler.next_point(chart.dimension());
        QcPointFrame<Rational> frame;
        try {
            frame = build_frame<Rational>(chart, point, 1);
        } catch (const Error& e) {
            throw ConstructionInvalid("sphere chart frame failed: " + std::string(e.what()));
        }
        const auto res = sasakian_check(frame);
        if (!res.epsilon || *res.epsilon != 1)
            throw ConstructionInvalid("sphere chart violates dη_i = 2ω_i + 2η_j ^ η_k at sample " + std::to_string(p));
    }
}

} // namespace

const std::vector<int>& quaternion_unit(int l) {
    switch (l) {
    case 0: return kUnitI;
    case 1: return kUnitJ;
    case 2: return kUnitK;
    default: throw DimensionMismatch("quaternion unit index");
    }
}

QcChart heisenberg(int n) {
    if (n < 1) throw SchemaError("n must be at least 1");
    QcChart c;
    c.label = "heisenberg-n" + std::to_string(n);
    c.n = n;
    const int h = 4 * n;
    for (int a = 0; a < h; ++a) c.coordinates.push_back("x" + std::to_string(a + 1));
    for (int l = 0; l < 3; ++l) c.coordinates.push_back("t" + std::to_string(l + 1));
    for (int l = 0; l < 3; ++l) {
        auto& eta = c.eta[l];
        for (int b = 0; b < h; ++b) {
            std::vector<std::pair<int, Expression>> terms;
            for (int a = 0; a < h; ++a)
                if (int e = block_entry(l, b, a); e != 0) terms.emplace_back(e, Expression::symbol(a));
            eta.push_back(signed_sum(terms));
        }
        for (int m = 0; m < 3; ++m) eta.push_back(Expression::constant(Rational(m == l ? 1 : 0)));
    }
    return c;
}

QcChart sphere_3sasakian(int n) {
    if (n < 1) throw SchemaError("n must be at least 1");
    QcChart c;
    c.label = "sphere3sasakian-n" + std::to_string(n);
    c.n = n;
    c.epsilon = 1;
    const int d = c.dimension();
    for (int a = 0; a < d; ++a) c.coordinates.push_back("y" + std::to_string(a + 1));

    // S = 1 + |y|^2, q_A = 2 y_A / S (A < D), q_D = (S - 2) / S.
    Expression s = Expression::constant(Rational(1));
    for (int a = 0; a < d; ++a) s = s + Expression::power(Expression::symbol(a), 2);
    const Expression two = Expression::constant(Rational(2));
    std::vector<Expression> q;
    for (int a = 0; a < d; ++a) q.push_back(two * Expression::symbol(a) / s);
    q.push_back((s - two) / s);

    // eta_l(d/dy_mu) = (2/S) [ (L_l q)_mu + y_mu (L_l q)_D ].
    const Expression pref = two / s;
    for (int l = 0; l < 3; ++l) {
        std::vector<Expression> lq;
        for (int r = 0; r <= d; ++r) {
            std::vector<std::pair<int, Expression>> terms;
            for (int col = 0; col <= d; ++col)
                if (int e = block_entry(l, r, col); e != 0) terms.emplace_back(e, q[static_cast<std::size_t>(col)]);
            lq.push_back(signed_sum(terms));
        }
        for (int mu = 0; mu < d; ++mu)
            c.eta[l].push_back(pref * (lq[static_cast<std::size_t>(mu)] + Expression::symbol(mu) * lq.back()));
    }
    validate_sphere(c);
    return c;
}

QcChart conformal_deform(const QcChart& chart, const Expression& mu) {
    QcChart out = chart;
    for (auto& row : out.eta)
        for (auto& e : row) e = mu * e;
    out.label = chart.label + "+deformed";
    out.epsilon.reset();
    return out;
}

QcChart conformal_deform(const QcChart& chart, const std::string& mu) {
    return conformal_deform(chart, parse_expression(mu, chart.coordinates));
}

const std::vector<std::string>& example_names() {
    static const std::vector<std::string> names = {"heisenberg", "sphere3sasakian"};
    return names;
}

QcChart make_example(const std::string& name, int n) {
    if (name == "heisenberg") return heisenberg(n);
    if (name == "sphere3sasakian") return sphere_3sasakian(n);
    throw SchemaError("unknown example '" + name + "'");
}

std::string chart_to_json(const QcChart& chart) {
    nlohmann::ordered_json j;
    j["label"] = chart.label;
    j["n"] = chart.n;
    j["coordinates"] = chart.coordinates;
    auto eta = nlohmann::ordered_json::array();
    for (const auto& row : chart.eta) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& e : row) r.push_back(print_expression(e, chart.coordinates));
        eta.push_back(std::move(r));
    }
    j["eta"] = std::move(eta);
    if (chart.epsilon) j["epsilon"] = *chart.epsilon;
    return j.dump(2) + "\n";
}

QcChart chart_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    auto need = [&](const char* key) -> const nlohmann::json& {
        if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
        return j.at(key);
    };
    QcChart c;
    try {
        c.label = j.is_object() && j.contains("label") ? j.at("label").get<std::string>() : std::string("custom");
        c.n = need("n").get<int>();
        c.coordinates = need("coordinates").get<std::vector<std::string>>();
        const auto& eta = need("eta");
        if (!eta.is_array() || eta.size() != 3) throw SchemaError("eta must have exactly 3 rows");
        for (std::size_t l = 0; l < 3; ++l) {
            const auto rows = eta[l].get<std::vector<std::string>>();
            for (const auto& src : rows) c.eta[l].push_back(parse_expression(src, c.coordinates));
        }
        if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("chart schema: ") + e.what());
    }
    c.validate();
    return c;
}

QcChart load_chart(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read chart file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return chart_from_json(ss.str());
}

} // namespace qc
