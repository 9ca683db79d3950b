#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "ncjet/demo.hpp"
#include "ncjet/io.hpp"

using namespace ncjet;

namespace {

enum Exit { Pass = 0, AssertionFailed = 1, InvalidInput = 2, ParseFailed = 3 };

struct InvalidInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CalculusPtr loadCalculus(const std::string& input) {
    if (!std::filesystem::exists(input)) {
        for (const auto& name : fixtureNames())
            if (name == input) return fixtureByName(name);
        throw InvalidInputError("no such file or fixture: " + input);
    }
    CalculusSpec spec = calculusSpecFromJson(readJsonFile(input));
    Report rep = validateSpec(spec);
    if (!rep.ok()) throw InvalidInputError(rep.firstFailure()->name + ": " + rep.firstFailure()->detail);
    return buildFromSpec(spec);
}

void emit(const Json& j, bool json, const std::vector<std::string>& text) {
    if (json)
        std::cout << j.dump(2) << "\n";
    else
        for (const auto& line : text) std::cout << line << "\n";
}

std::vector<std::string> reportLines(const Report& r, const std::string& indent = "  ") {
    std::vector<std::string> out;
    for (const auto& c : r.checks)
        out.push_back(indent + (c.pass ? "pass  " : "FAIL  ") + c.name + (c.detail.empty() ? "" : "  (" + c.detail + ")"));
    return out;
}

Json symbolJson(const GradedSymbol& s) {
    Json out = Json::object();
    for (const auto& [k, m] : s.parts) out[std::to_string(k)] = matToJson(m);
    return out;
}

std::string symbolText(const GradedSymbol& s) {
    if (s.isZero()) return "0";
    std::string out;
    for (const auto& [k, m] : s.parts) {
        out += (out.empty() ? "" : " + ") + std::string("deg ") + std::to_string(k) + " [";
        for (int i = 0; i < m.rows(); ++i) {
            out += i ? "; " : "";
            for (int j = 0; j < m.cols(); ++j) out += (j ? " " : "") + toString(m(i, j));
        }
        out += "]";
    }
    return out;
}

int cmdValidate(const std::string& input, bool json) {
    Report rep;
    CalculusPtr c;
    if (!std::filesystem::exists(input)) {
        c = loadCalculus(input);
    } else {
        CalculusSpec spec = calculusSpecFromJson(readJsonFile(input));
        rep = validateSpec(spec);
        if (rep.ok()) c = buildFromSpec(spec);
    }
    if (c) rep.merge(validateCalculus(*c), "calculus: ");
    Json j;
    j["input"] = input;
    j["ok"] = rep.ok();
    j["checks"] = reportToJson(rep);
    std::vector<std::string> text = {input + ": " + (rep.ok() ? "valid" : "INVALID")};
    for (auto& l : reportLines(rep)) text.push_back(l);
    emit(j, json, text);
    if (rep.ok()) return Pass;
    // axioms of the input itself are an input error; derived failures are assertions
    return c ? AssertionFailed : InvalidInput;
}

int cmdJets(const std::string& input, int order, bool json) {
    CalculusPtr c = loadCalculus(input);
    Jets jets(c, regularBimodule(c->alg));
    Json rows = Json::array();
    std::vector<std::string> text = {"k  dim J^k  dim S^k  exact  elemental"};
    bool ok = true;
    for (int k = 0; k <= order; ++k) {
        Json row;
        row["k"] = k;
        int jd = jets.holonomic(k).mod.dim;
        row["J"] = jd;
        std::string line = std::to_string(k) + "  " + std::to_string(jd);
        if (k == 0) {
            row["S"] = jd;
            row["exact"] = true;
            row["elemental"] = true;
            line += "  " + std::to_string(jd) + "  yes  yes";
        } else {
            Report ex = exactnessReport(jets, k);
            int sd = jets.sym(k).mod.dim;
            bool elem = jets.elementalSpan(k).dim() == jd;
            row["S"] = sd;
            row["exact"] = ex.ok();
            row["elemental"] = elem;
            if (!ex.ok()) row["exactness"] = reportToJson(ex);
            ok = ok && ex.ok() && elem;
            line += "  " + std::to_string(sd) + "  " + (ex.ok() ? "yes" : "NO") + "  " + (elem ? "yes" : "NO");
        }
        rows.push_back(row);
        text.push_back(line);
    }
    Json j;
    j["calculus"] = c->name;
    j["rows"] = rows;
    j["ok"] = ok;
    emit(j, json, text);
    return ok ? Pass : AssertionFailed;
}

int cmdSpencer(const std::string& input, int order, bool corrupt, bool json) {
    CalculusPtr c = loadCalculus(input);
    Jets jets(c, regularBimodule(c->alg));
    SpencerComplexResult sc = spencerComplex(jets, order);
    Report cells = bicomplexCheck(jets, order, corrupt);
    Report props = spencerPropertySuite(jets, order);
    Json j;
    j["calculus"] = c->name;
    j["order"] = order;
    j["objects"] = sc.objects;
    j["dims"] = sc.dims;
    j["isComplex"] = sc.isComplex;
    j["cohomology"] = sc.cohomologyDims;
    j["bicomplex"] = reportToJson(cells);
    j["properties"] = reportToJson(props);
    bool ok = sc.isComplex && cells.ok() && props.ok();
    j["ok"] = ok;
    std::vector<std::string> text;
    std::string seq, coh;
    for (size_t i = 0; i < sc.objects.size(); ++i) {
        seq += (i ? " -> " : "") + sc.objects[i] + "(" + std::to_string(sc.dims[i]) + ")";
        coh += (i ? " " : "") + std::to_string(sc.cohomologyDims[i]);
    }
    text.push_back("Spencer sequence: " + seq);
    text.push_back(std::string("complex: ") + (sc.isComplex ? "yes" : "NO") + "   cohomology: " + coh);
    text.push_back("bicomplex cells:");
    for (auto& l : reportLines(cells)) text.push_back(l);
    text.push_back("properties:");
    for (auto& l : reportLines(props)) text.push_back(l);
    emit(j, json, text);
    return ok ? Pass : AssertionFailed;
}

// central elements of ker ∧ in Ω^1 ⊗ Ω^1
Subspace metricCandidates(const Calculus& c) {
    const Tensor& oo = forms(c, 1, c.omega[1]);
    Subspace s = kernelOf(wedge(c, 1, 1));
    for (int g : c.alg->generators) s = intersect(s, kernelOf(oo.mod.left[g] - oo.mod.right[g]));
    return s;
}

int cmdConnections(const std::string& input, bool bimodule, bool frameConstant, bool json) {
    CalculusPtr cp = loadCalculus(input);
    const Calculus& c = *cp;
    Json j;
    j["calculus"] = c.name;
    std::vector<std::string> text;
    bool ok = true;
    if (!bimodule) {
        Bimodule a = regularBimodule(c.alg);
        AffineSpace s = solveLeftConnections(c, a);
        j["kind"] = "left connections on A";
        j["empty"] = s.empty;
        if (!s.empty) {
            Connection conn = connectionAt(c, a, s, s.particular);
            j["dimension"] = s.direction.dim();
            j["nabla"] = matToJson(conn.nabla);
            j["curvatureZero"] = curvature(c, conn).isZero();
            text.push_back("left connections on A: affine dimension " + std::to_string(s.direction.dim()));
            text.push_back(std::string("representative curvature: ") + (curvature(c, conn).isZero() ? "0" : "nonzero"));
        } else {
            text.push_back("no left connection on A");
        }
        emit(j, json, text);
        return Pass;
    }
    AffineSpace s = solveBimoduleConnections(c, frameConstant ? BimoduleAnsatz::FrameConstant : BimoduleAnsatz::General);
    j["kind"] = frameConstant ? "bimodule connections, frame-constant" : "bimodule connections";
    j["empty"] = s.empty;
    if (s.empty) {
        text.push_back("no bimodule connection");
        emit(j, json, text);
        return Pass;
    }
    BimoduleConnection b = bimoduleConnectionAt(c, s, s.particular);
    Report axioms = checkBimoduleConnection(c, b);
    ok = axioms.ok();
    bool torsionFree = torsion(c, b.base).isZero(), flat = curvature(c, b.base).isZero();
    j["dimension"] = s.direction.dim();
    j["nabla"] = matToJson(b.base.nabla);
    j["sigma"] = matToJson(b.sigma);
    j["axioms"] = reportToJson(axioms);
    j["torsionZero"] = torsionFree;
    j["curvatureZero"] = flat;
    text.push_back(std::string(j["kind"].get<std::string>()) + ": affine dimension " + std::to_string(s.direction.dim()));
    if (c.frame.cols() > 0) {
        bool parallel = true;
        for (int a = 0; a < c.frame.cols(); ++a) parallel = parallel && isZero(b.base.nabla * c.frame.col(a));
        j["frameParallel"] = parallel;
        text.push_back(std::string("representative: ∇ = 0 on the frame: ") + (parallel ? "yes" : "no"));
    }
    text.push_back(std::string("torsion: ") + (torsionFree ? "0" : "nonzero") + "   curvature: " + (flat ? "0" : "nonzero"));
    Subspace metrics = metricCandidates(c);
    if (metrics.dim() > 0) {
        Vec g = metrics.basis.row(0);
        bool compatible = isZero(metricCompat(c, b, g));
        j["metric"] = vecToJson(g);
        j["metricCompatible"] = compatible;
        text.push_back(std::string("central element of ker ∧: ∇g = ") + (compatible ? "0" : "nonzero"));
    }
    for (auto& l : reportLines(axioms)) text.push_back(l);
    j["ok"] = ok;
    emit(j, json, text);
    return ok ? Pass : AssertionFailed;
}

struct QuantSetup {
    std::unique_ptr<Jets> jets;
    std::unique_ptr<Quantization> q;
    std::vector<GradedSymbol> gens;
    std::vector<std::string> names;
};

QuantSetup buildSetup(const CalculusPtr& cp) {
    const Calculus& c = *cp;
    QuantSetup st;
    st.jets = std::make_unique<Jets>(cp, regularBimodule(c.alg));
    Jets& jets = *st.jets;
    BimoduleConnection b;
    if (stableCap(jets) > 2) {
        AffineSpace s = c.frame.cols() > 0 ? solveBimoduleConnections(c, BimoduleAnsatz::FrameConstant) : AffineSpace{};
        if (s.empty) s = solveBimoduleConnections(c);
        if (s.empty) throw std::domain_error("missing bimodule connection on Ω1");
        b = bimoduleConnectionAt(c, s, s.particular);
    }
    std::vector<Mat> retractions = {Mat()};
    if (auto s11 = symmetrizerRetraction(jets, b)) retractions.push_back(*s11);
    st.q = std::make_unique<Quantization>(buildQuantization(jets, b, exteriorConnection(c, jets.base()), retractions));
    for (int g : c.alg->generators) {
        if (c.alg->basisVec(g) == c.alg->unit) continue;
        st.gens.push_back(GradedSymbol::of(0, c.alg->rightMul(c.alg->basisVec(g))));
        st.names.push_back("x_" + c.alg->basisNames[g]);
    }
    if (c.frame.cols() > 0) {
        auto parts = partialOps(c);
        for (size_t a = 0; a < parts.size(); ++a) {
            st.gens.push_back(GradedSymbol::of(1, st.q->symbol(parts[a], 1)));
            std::string n = a < c.frameNames.size() ? c.frameNames[a] : std::to_string(a);
            st.names.push_back("p_" + (n.size() > 1 && n[0] == 'd' ? n.substr(1) : n));
        }
    } else if (st.q->cap() > 1) {
        AffineSpace basis = solveMaps(jets.sym(1).mod, jets.base(), Linearity::LeftA);
        for (int k = 0; k < basis.direction.dim(); ++k) {
            st.gens.push_back(GradedSymbol::of(1, unvec(basis.direction.basis.row(k), c.alg->dim, jets.sym(1).mod.dim)));
            st.names.push_back("p" + std::to_string(k));
        }
    }
    return st;
}

int cmdQuantize(const std::string& input, const std::string& hbarText, const std::string& opPath, bool starGens, bool json) {
    Rat hbar;
    try {
        hbar = parseRat(hbarText);
    } catch (const std::invalid_argument& e) {
        throw InvalidInputError(std::string("--hbar: ") + e.what());
    }
    CalculusPtr cp = loadCalculus(input);
    QuantSetup st = buildSetup(cp);
    const Quantization& q = *st.q;
    Json j;
    j["calculus"] = cp->name;
    j["cap"] = q.cap();
    std::vector<std::string> text = {"quantization on A, symbols in degrees 0.." + std::to_string(q.cap() - 1)};
    Json chain = Json::array();
    for (int k = 0; k < q.cap(); ++k) {
        chain.push_back(matToJson(q.chain().nabla[k]));
        text.push_back("  ∇^" + std::to_string(k) + ": A -> S^" + std::to_string(k) + " (dim " +
                       std::to_string(q.chain().nabla[k].rows()) + ")");
    }
    j["nabla"] = chain;
    bool ok = true;
    if (!opPath.empty()) {
        OpSpec op = opSpecFromJson(readJsonFile(opPath));
        if (op.source != "A" || op.target != "A") throw InvalidInputError("operator must map A to A");
        if (op.matrix.rows() != cp->alg->dim || op.matrix.cols() != cp->alg->dim)
            throw InvalidInputError("operator matrix must be " + std::to_string(cp->alg->dim) + " x " + std::to_string(cp->alg->dim));
        auto order = q.order(op.matrix);
        Json o;
        if (!order) {
            o["order"] = nullptr;
            text.push_back("operator: order above " + std::to_string(q.cap()));
            ok = false;
        } else {
            o["order"] = *order;
            text.push_back("operator of order " + std::to_string(*order));
            Json comps = Json::array();
            for (int k = 0; k <= *order; ++k) {
                Mat h = q.homogeneous(op.matrix, k);
                Json e;
                e["k"] = k;
                e["component"] = matToJson(h);
                e["gradedPiece"] = matToJson(q.gradedPiece(op.matrix, k));
                comps.push_back(e);
                std::string line = "  component " + std::to_string(k) + ":";
                for (int col = 0; col < h.cols(); ++col) {
                    line += " " + cp->alg->basisNames[col] + " ->";
                    Vec v = h.col(col);
                    std::string val;
                    for (int r = 0; r < (int)v.size(); ++r) {
                        if (sgn(v[r]) == 0) continue;
                        val += (val.empty() ? "" : " + ") + toString(v[r]) + (cp->alg->basisNames[r] == "1" ? "" : "·" + cp->alg->basisNames[r]);
                    }
                    line += " " + (val.empty() ? std::string("0") : val) + ";";
                }
                text.push_back(line);
            }
            o["components"] = comps;
            Report laws = quantizationLaws(q, {op.matrix});
            o["laws"] = reportToJson(laws);
            ok = ok && laws.ok();
            for (auto& l : reportLines(laws)) text.push_back(l);
        }
        j["operator"] = o;
    }
    if (starGens) {
        Json table = Json::array();
        text.push_back("star table at ℏ = " + toString(hbar));
        bool tableOk = true;
        for (size_t a = 0; a < st.gens.size(); ++a)
            for (size_t b = 0; b < st.gens.size(); ++b) {
                GradedSymbol s = q.star(st.gens[a], st.gens[b], hbar);
                bool entry = q.quantize(s, hbar) == q.quantize(st.gens[a], hbar) * q.quantize(st.gens[b], hbar);
                if (sgn(hbar) == 0) entry = entry && s == q.product(st.gens[a], st.gens[b]);
                tableOk = tableOk && entry;
                Json e;
                e["left"] = st.names[a];
                e["right"] = st.names[b];
                e["value"] = symbolJson(s);
                e["verified"] = entry;
                table.push_back(e);
                text.push_back("  " + st.names[a] + " ⋆ " + st.names[b] + " = " + symbolText(s) + (entry ? "" : "   FAIL"));
            }
        Report laws = starLaws(q, st.gens, {hbar});
        j["generators"] = st.names;
        j["star"] = table;
        j["starLaws"] = reportToJson(laws);
        ok = ok && tableOk && laws.ok();
        text.push_back(std::string(sgn(hbar) == 0 ? "entries equal symbol products and " : "") +
                       "q_ℏ maps every entry to the operator composition: " + (tableOk ? "yes" : "NO"));
        for (auto& l : reportLines(laws)) text.push_back(l);
    }
    j["ok"] = ok;
    emit(j, json, text);
    return ok ? Pass : AssertionFailed;
}

int cmdDemo(const std::string& which, bool corrupt, bool json) {
    if (which != "quaternion") throw InvalidInputError("unknown demo '" + which + "'");
    DemoReport r = demoQuaternion(corrupt);
    Json j;
    j["demo"] = which;
    Json claims = Json::array();
    std::vector<std::string> text;
    for (const auto& c : r.claims) {
        Json e;
        e["group"] = c.group;
        e["name"] = c.name;
        e["pass"] = c.pass;
        if (!c.detail.empty()) e["detail"] = c.detail;
        claims.push_back(e);
        text.push_back(std::string(c.pass ? "pass" : "FAIL") + " [" + std::to_string(c.group) + "] " + c.name +
                       (c.detail.empty() ? "" : "  (" + c.detail + ")"));
    }
    j["claims"] = claims;
    j["notes"] = r.notes;
    j["ok"] = r.ok();
    for (const auto& n : r.notes) text.push_back("note: " + n);
    int failed = 0;
    for (const auto& c : r.claims) failed += !c.pass;
    if (const Claim* f = r.firstFailure())
        text.push_back(std::to_string(failed) + " of " + std::to_string(r.claims.size()) + " claims failed; first: " + f->name);
    else
        text.push_back("all " + std::to_string(r.claims.size()) + " claims hold");
    emit(j, json, text);
    return r.ok() ? Pass : AssertionFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ncjet: exact jets, Spencer complexes, connections and quantizations over finite-dimensional algebras"};
    app.require_subcommand(0, 1);
    std::string dump;
    app.add_option("--dump-fixture", dump, "write a built-in fixture as a calculus file to stdout");

    std::string input, opPath, hbar = "1", which;
    int order = 2;
    bool json = false, corrupt = false, bimodule = false, frameConstant = false, starGens = false;
    auto inputOpt = [&](CLI::App* s) {
        s->add_option("input", input, "calculus file or fixture name")->required();
        s->add_flag("--json", json, "machine-readable output");
    };

    auto* validate = app.add_subcommand("validate", "check algebra, first order calculus and exterior tower axioms");
    inputOpt(validate);
    auto* jetsCmd = app.add_subcommand("jets", "jet and symbol dimensions with exactness verdicts");
    inputOpt(jetsCmd);
    jetsCmd->add_option("--order", order, "highest jet order")->check(CLI::NonNegativeNumber);
    auto* spencer = app.add_subcommand("spencer", "Spencer complex, cohomology and bicomplex cells");
    inputOpt(spencer);
    spencer->add_option("--order", order, "jet order")->check(CLI::PositiveNumber);
    spencer->add_flag("--corrupt-sign", corrupt, "flip the sign of δ (negative control)");
    auto* conns = app.add_subcommand("connections", "solve for connections");
    inputOpt(conns);
    conns->add_flag("--bimodule", bimodule, "bimodule connections on Ω1 instead of left connections on A");
    conns->add_flag("--frame-constant", frameConstant, "restrict to scalar coefficients on the frame");
    auto* quant = app.add_subcommand("quantize", "quantization on A, operator decomposition and star table");
    inputOpt(quant);
    quant->add_option("--hbar", hbar, "deformation parameter p/q");
    quant->add_option("--op", opPath, "operator file to decompose");
    quant->add_flag("--star-gens", starGens, "star products of the generators");
    auto* demo = app.add_subcommand("demo", "run a worked example");
    demo->add_option("name", which, "quaternion")->required();
    demo->add_flag("--json", json, "machine-readable output");
    demo->add_flag("--corrupt", corrupt, "use a corrupted retraction (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Pass : InvalidInput;
    }

    try {
        if (!dump.empty()) {
            std::cout << calculusToJson(*fixtureByName(dump)).dump(2) << "\n";
            return Pass;
        }
        if (*validate) return cmdValidate(input, json);
        if (*jetsCmd) return cmdJets(input, order, json);
        if (*spencer) return cmdSpencer(input, order, corrupt, json);
        if (*conns) return cmdConnections(input, bimodule, frameConstant, json);
        if (*quant) return cmdQuantize(input, hbar, opPath, starGens, json);
        if (*demo) return cmdDemo(which, corrupt, json);
        std::cout << app.help();
        return InvalidInput;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return ParseFailed;
    } catch (const InvalidInputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return InvalidInput;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return InvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return InvalidInput;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return InvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "assertion failed: " << e.what() << "\n";
        return AssertionFailed;
    }
}
