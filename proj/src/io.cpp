#include "ncjet/io.hpp"

#include <fstream>
#include <sstream>

namespace ncjet {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
    return j.at(key);
}

int intField(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

void requireArray(const Json& j, int size, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    if (size >= 0 && static_cast<int>(j.size()) != size)
        throw ParseError(where + ": expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
}

std::vector<Mat> matList(const Json& j, int count, int rows, int cols, const std::string& where) {
    requireArray(j, count, where);
    std::vector<Mat> out;
    for (int i = 0; i < count; ++i) out.push_back(matFromJson(j[i], rows, cols, where + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

Json ratToJson(const Rat& r) { return toString(r); }

Rat ratFromJson(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (!j.is_string()) throw ParseError(where + ": expected a rational string \"p/q\"");
    try {
        return parseRat(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

Json vecToJson(const Vec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(ratToJson(x));
    return out;
}

Vec vecFromJson(const Json& j, int size, const std::string& where) {
    requireArray(j, size, where);
    Vec v;
    for (size_t i = 0; i < j.size(); ++i) v.push_back(ratFromJson(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

Json matToJson(const Mat& m) {
    Json out = Json::array();
    for (int i = 0; i < m.rows(); ++i) out.push_back(vecToJson(m.row(i)));
    return out;
}

Mat matFromJson(const Json& j, int rows, int cols, const std::string& where) {
    requireArray(j, rows, where);
    const int r = static_cast<int>(j.size());
    int c = cols;
    if (c < 0) c = r > 0 && j[0].is_array() ? static_cast<int>(j[0].size()) : 0;
    Mat m(r, c);
    for (int i = 0; i < r; ++i) m.setRow(i, vecFromJson(j[i], c, where + "[" + std::to_string(i) + "]"));
    return m;
}

Json readJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

CalculusSpec calculusSpecFromJson(const Json& j) {
    CalculusSpec s;
    if (!j.is_object()) throw ParseError("calculus file: expected an object");
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ParseError("name: expected a string");
        s.name = j["name"].get<std::string>();
    }
    const Json& alg = field(j, "algebra", "calculus file");
    const int n = intField(alg, "dim", "algebra");
    if (n < 1) throw ParseError("algebra.dim must be positive");
    if (alg.contains("basis")) {
        requireArray(alg["basis"], n, "algebra.basis");
        for (const auto& b : alg["basis"]) {
            if (!b.is_string()) throw ParseError("algebra.basis: expected strings");
            s.basis.push_back(b.get<std::string>());
        }
    } else {
        for (int i = 0; i < n; ++i) s.basis.push_back("e" + std::to_string(i));
    }
    s.unit = vecFromJson(field(alg, "unit", "algebra"), n, "algebra.unit");
    const Json& mult = field(alg, "mult", "algebra");
    requireArray(mult, n, "algebra.mult");
    for (int a = 0; a < n; ++a) {
        const std::string w = "algebra.mult[" + std::to_string(a) + "]";
        requireArray(mult[a], n, w);
        std::vector<Vec> row;
        for (int b = 0; b < n; ++b) row.push_back(vecFromJson(mult[a][b], n, w + "[" + std::to_string(b) + "]"));
        s.mult.push_back(std::move(row));
    }
    const Json& om = field(j, "omega1", "calculus file");
    s.omegaDim = intField(om, "dim", "omega1");
    if (s.omegaDim < 0) throw ParseError("omega1.dim must be nonnegative");
    s.left = matList(field(om, "left", "omega1"), n, s.omegaDim, s.omegaDim, "omega1.left");
    s.right = matList(field(om, "right", "omega1"), n, s.omegaDim, s.omegaDim, "omega1.right");
    s.d = matFromJson(field(om, "d", "omega1"), s.omegaDim, n, "omega1.d");
    s.maxDegree = intField(j, "maxDegree", "calculus file");
    if (s.maxDegree < 1) throw ParseError("maxDegree must be at least 1");
    if (om.contains("frame")) {
        Mat cols = matFromJson(om["frame"], -1, s.omegaDim, "omega1.frame");
        s.frame = transpose(cols);
        if (om.contains("frameNames")) {
            requireArray(om["frameNames"], cols.rows(), "omega1.frameNames");
            for (const auto& f : om["frameNames"]) s.frameNames.push_back(f.is_string() ? f.get<std::string>() : "");
        }
    }
    return s;
}

Json calculusToJson(const Calculus& c) {
    const Algebra& a = *c.alg;
    Json alg;
    alg["dim"] = a.dim;
    alg["basis"] = a.basisNames;
    alg["unit"] = vecToJson(a.unit);
    Json mult = Json::array();
    for (int i = 0; i < a.dim; ++i) {
        Json row = Json::array();
        for (int j = 0; j < a.dim; ++j) row.push_back(vecToJson(a.mult[i][j]));
        mult.push_back(row);
    }
    alg["mult"] = mult;
    const Bimodule& o = c.omega[1];
    Json om;
    om["dim"] = o.dim;
    Json left = Json::array(), right = Json::array();
    for (int i = 0; i < a.dim; ++i) {
        left.push_back(matToJson(o.left[i]));
        right.push_back(matToJson(o.right[i]));
    }
    om["left"] = left;
    om["right"] = right;
    om["d"] = matToJson(c.d0());
    if (c.frame.cols() > 0) {
        om["frame"] = matToJson(transpose(c.frame));
        om["frameNames"] = c.frameNames;
    }
    Json out;
    out["name"] = c.name;
    out["algebra"] = alg;
    out["omega1"] = om;
    out["maxDegree"] = c.maxDegree;
    return out;
}

Report validateSpec(const CalculusSpec& s) {
    Report rep;
    AlgebraPtr alg;
    try {
        alg = makeAlgebra(s.basis, s.mult, s.unit, s.name);
    } catch (const std::invalid_argument& e) {
        rep.add("algebra shape", false, e.what());
        return rep;
    }
    rep.merge(validateAlgebra(*alg), "algebra: ");
    if (!rep.ok()) return rep;
    Bimodule o;
    try {
        o = makeBimodule(alg, s.omegaDim, s.left, s.right, "Ω1");
    } catch (const std::invalid_argument& e) {
        rep.add("omega1 shape", false, e.what());
        return rep;
    }
    rep.merge(validateFODC(*alg, o, s.d), "omega1: ");
    if (s.frame.cols() > 0) {
        Mat gens(s.omegaDim, s.frame.cols() * alg->dim);
        for (int f = 0; f < s.frame.cols(); ++f)
            for (int u = 0; u < alg->dim; ++u) gens.setCol(f * alg->dim + u, o.left[u] * s.frame.col(f));
        rep.add("frame is a free left basis", gens.cols() == s.omegaDim && rank(gens) == s.omegaDim);
    }
    return rep;
}

CalculusPtr buildFromSpec(const CalculusSpec& s) {
    Report rep = validateSpec(s);
    if (!rep.ok()) throw std::domain_error(rep.firstFailure()->name + " " + rep.firstFailure()->detail);
    AlgebraPtr alg = makeAlgebra(s.basis, s.mult, s.unit, s.name);
    Bimodule o = makeBimodule(alg, s.omegaDim, s.left, s.right, "Ω1");
    return buildCalculus(alg, o, s.d, s.maxDegree, s.name, s.frame, s.frameNames);
}

OpSpec opSpecFromJson(const Json& j) {
    OpSpec op;
    auto ref = [&](const char* key) {
        const Json& v = field(j, key, "operator file");
        if (!v.is_string()) throw ParseError(std::string("operator file.") + key + ": expected a module name");
        return v.get<std::string>();
    };
    op.source = ref("source");
    op.target = ref("target");
    op.matrix = matFromJson(field(j, "matrix", "operator file"), -1, -1, "operator file.matrix");
    return op;
}

Json reportToJson(const Report& r) {
    Json out = Json::array();
    for (const auto& c : r.checks) {
        Json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        if (!c.detail.empty()) e["detail"] = c.detail;
        out.push_back(e);
    }
    return out;
}

}  // namespace ncjet
