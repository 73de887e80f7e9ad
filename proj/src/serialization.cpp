#include "ocorg/serialization.hpp"

#include <cstdio>

namespace ocorg {

json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Matrix matrix_from_json(const json& j) {
    const std::size_t rows = j.at("rows");
    const std::size_t cols = j.at("cols");
    Matrix m(rows, cols);
    const auto& e = j.at("entries");
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = e[i][c];
    return m;
}

json to_json(const HPolytope& p) {
    return json{{"H", to_json(p.H())}, {"h", p.h()}};
}

HPolytope hpolytope_from_json(const json& j) {
    return HPolytope(matrix_from_json(j.at("H")), j.at("h").get<Vector>());
}

json to_json(const SupportSet& s) {
    json terms = json::array();
    for (const auto& t : s.terms)
        terms.push_back(json{{"map", to_json(t.map)}, {"lo", t.lo}, {"hi", t.hi}});
    return json{{"multiplier", s.multiplier}, {"terms", terms}};
}

SupportSet support_set_from_json(const json& j) {
    SupportSet s;
    s.multiplier = j.at("multiplier");
    for (const auto& t : j.at("terms"))
        s.terms.push_back({matrix_from_json(t.at("map")), t.at("lo").get<Vector>(),
                           t.at("hi").get<Vector>()});
    return s;
}

json mas_to_json(const MasResult& mas, double lambda, double eps_mas) {
    return json{{"schema", "ocorg-mas-1"},
                {"lambda", lambda},
                {"eps_mas", eps_mas},
                {"k_star", mas.k_star},
                {"rows_raw", mas.rows_raw},
                {"rows", mas.polytope.num_rows()},
                {"m", mas.m},
                {"n", mas.n},
                {"theta_inf", mas.theta_inf},
                {"polytope", to_json(mas.polytope)}};
}

MasResult mas_from_json(const json& j) {
    MasResult mas;
    mas.polytope = hpolytope_from_json(j.at("polytope"));
    mas.k_star = j.at("k_star");
    mas.rows_raw = j.at("rows_raw");
    mas.m = j.at("m");
    mas.n = j.at("n");
    mas.theta_inf = j.at("theta_inf").get<Vector>();
    return mas;
}

json rpi_to_json(const RPIApprox& rpi) {
    return json{{"schema", "ocorg-rpi-1"},
                {"s", rpi.s},
                {"alpha", rpi.alpha},
                {"set", to_json(rpi.set)}};
}

RPIApprox rpi_from_json(const json& j) {
    RPIApprox rpi;
    rpi.s = j.at("s");
    rpi.alpha = j.at("alpha");
    rpi.set = support_set_from_json(j.at("set"));
    return rpi;
}

std::string polygon_csv(const std::vector<std::array<double, 2>>& vertices) {
    std::string out = "x,y\n";
    char buf[96];
    for (const auto& v : vertices) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", v[0], v[1]);
        out += buf;
    }
    return out;
}

std::string content_hash(const std::string& canonical) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace ocorg
