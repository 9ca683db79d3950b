// One line per acceptance criterion. Exit status is 0 when the set of failing
// criteria equals the --expect-fail list (empty by default).
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>

#include "ncjet/demo.hpp"

using namespace ncjet;

namespace {

Report groupReport(const DemoReport& demo, int group) {
    Report r;
    for (const auto& c : demo.claims)
        if (c.group == group) r.add(c.name, c.pass, c.detail);
    if (r.checks.empty()) r.add("claims of group " + std::to_string(group) + " ran", false, "demo stopped early");
    return r;
}

Report spencerSuite() {
    Report r;
    const std::pair<const char*, int> fixtures[] = {{"quaternion", 3}, {"two-point-universal", 3}, {"matrix2-universal", 2}};
    for (const auto& [name, top] : fixtures) {
        CalculusPtr c = fixtureByName(name);
        Jets jets(c, regularBimodule(c->alg));
        const std::string tag = std::string(name) + ": ";
        r.merge(spencerPropertySuite(jets, top), tag);
        for (int n = 1; n <= std::min(top, 2); ++n) r.merge(bicomplexCheck(jets, n), tag + "bicomplex n=" + std::to_string(n) + " ");
        for (int n = 2; n <= top; ++n) {
            SpencerComplexResult sc = spencerComplex(jets, n);
            r.add(tag + "Spencer sequence is a complex n=" + std::to_string(n), sc.isComplex);
            if (std::string(name) == "quaternion") {
                bool zero = std::all_of(sc.cohomologyDims.begin(), sc.cohomologyDims.end(), [](int d) { return d == 0; });
                std::string dims;
                for (int d : sc.cohomologyDims) dims += std::to_string(d) + " ";
                r.add(tag + "Spencer cohomology vanishes n=" + std::to_string(n), zero, dims);
            }
        }
    }
    return r;
}

Report quantizationSuite(const QuaternionModel& m) {
    Report r;
    if (!m.quant) {
        r.add("quaternion quantization", false, m.failure);
        return r;
    }
    std::vector<Mat> ops = {m.leftK, m.right[1], m.partials[0], m.partials[1], m.partials[0] * m.partials[1],
                            m.leftK * m.partials[1] + m.right[2]};
    r.merge(quantizationLaws(*m.quant, ops), "quaternion: ");
    std::vector<GradedSymbol> gens = m.generators;
    gens.push_back(m.generators[2] + m.generators[1]);
    r.merge(starLaws(*m.quant, gens, {Rat(0), Rat(1), Rat(2, 3)}), "quaternion: ");

    CalculusPtr c = fixtureByName("two-point-universal");
    Jets jets(c, regularBimodule(c->alg));
    Quantization q = buildQuantization(jets, BimoduleConnection{}, exteriorConnection(*c, jets.base()));
    AffineSpace forms1 = solveMaps(forms(*c, 1, jets.base()).mod, jets.base(), Linearity::LeftA);
    Mat vectorField = unvec(forms1.direction.basis.row(0), c->alg->dim, forms(*c, 1, jets.base()).mod.dim);
    Mat deriv = vectorField * exteriorConnection(*c, jets.base()).nabla;
    Mat x = c->alg->rightMul(c->alg->basisVec(1));
    r.merge(quantizationLaws(q, {x, deriv, deriv * x + x}), "two-point: ");
    r.merge(starLaws(q, {GradedSymbol::of(0, x), GradedSymbol::of(1, q.symbol(deriv, 1))}, {Rat(0), Rat(1), Rat(2, 3)}),
            "two-point: ");
    return r;
}

Report connectionSuite(const QuaternionModel& m) {
    Report r;
    for (const auto& name : fixtureNames()) r.merge(validateCalculus(*fixtureByName(name)), name + ": ");

    const Calculus& c = *m.calc;
    Jets& jets = *m.jets;
    const Bimodule& h = jets.base();
    Connection flat = exteriorConnection(c, h);
    HigherConnection h1 = higherConnectionFromConnection(jets, flat);
    Connection onSym1 = tensorConnection(c, m.levi, flat);
    r.merge(jetConnectionBlocks(jets, h1, onSym1, 2), "n=1: ");
    Connection onJ1 = jetFromSym(jets, h1, onSym1);
    r.add("transfer round trip from S^1", symFromJet(jets, h1, onJ1).nabla == onSym1.nabla);
    r.add("transfer round trip from J^1", jetFromSym(jets, h1, symFromJet(jets, h1, onJ1)).nabla == onJ1.nabla);

    HigherConnection h2 = higherFromJetConnection(jets, 2, onJ1);
    r.add("connection on J^1 -> 2-connection -> connection", associatedConnection(jets, h2).nabla == onJ1.nabla);
    r.add("2-connection -> connection on J^1 -> 2-connection",
          higherFromJetConnection(jets, 2, associatedConnection(jets, h2)).section == h2.section);
    const SymModule& s2 = jets.sym(2);
    const JetModule& j2 = jets.holonomic(2);
    AffineSpace maps = solveMaps(j2.lower, s2.mod, Linearity::LeftA);
    if (maps.direction.dim() > 0) {
        Mat phi = unvec(maps.direction.basis.row(0), s2.mod.dim, j2.lower.dim);
        HigherConnection shifted = higherConnectionFromSection(jets, 2, h2.section + j2.symInclude * phi);
        r.add("round trip for a shifted 2-connection",
              higherFromJetConnection(jets, 2, associatedConnection(jets, shifted)).section == shifted.section);
    }
    AffineSpace symConns = solveLeftConnections(c, s2.mod);
    if (symConns.empty) {
        r.add("connection on S^2", false);
        return r;
    }
    Connection onSym2 = connectionAt(c, s2.mod, symConns, symConns.particular);
    r.merge(jetConnectionBlocks(jets, h2, onSym2, 2), "n=2: ");
    Connection onJ2 = jetFromSym(jets, h2, onSym2);
    r.add("transfer round trip from S^2", symFromJet(jets, h2, onJ2).nabla == onSym2.nabla);
    r.add("transfer round trip from J^2", jetFromSym(jets, h2, symFromJet(jets, h2, onJ2)).nabla == onJ2.nabla);
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> expectFail;
    bool verbose = false;
    app.add_option("--expect-fail", expectFail, "criteria known to fail");
    app.add_flag("-v,--verbose", verbose, "list every check");
    CLI11_PARSE(app, argc, argv);

    auto model = buildQuaternionModel();
    DemoReport demo;

    const std::vector<std::pair<std::string, std::function<Report()>>> criteria = {
        {"quaternion bimodule connection",
         [&] {
             demo = demoQuaternion();
             return groupReport(demo, 1);
         }},
        {"quaternion jets, symbols and the symbol connection chain", [&] { return groupReport(demo, 2); }},
        {"second jet of the metric", [&] { return groupReport(demo, 3); }},
        {"homogeneous components of L_k", [&] { return groupReport(demo, 4); }},
        {"quaternion star product table", [&] { return groupReport(demo, 5); }},
        {"Spencer property suite on all fixtures", spencerSuite},
        {"quantization property suite", [&] { return quantizationSuite(*model); }},
        {"calculus and connection property suite", [&] { return connectionSuite(*model); }},
    };

    std::set<int> failed;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        auto t0 = std::chrono::steady_clock::now();
        Report r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r.add("exception", false, e.what());
        }
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        int bad = 0;
        for (const auto& c : r.checks) bad += !c.pass;
        if (!r.ok()) failed.insert(id);
        std::printf("criterion %d: %s  %s  (%zu checks, %d failed, %.2fs)\n", id, r.ok() ? "PASS" : "FAIL",
                    criteria[i].first.c_str(), r.checks.size(), bad, secs);
        for (const auto& c : r.checks)
            if (!c.pass || verbose)
                std::printf("    %s %s%s\n", c.pass ? "ok  " : "FAIL", c.name.c_str(),
                            c.detail.empty() ? "" : ("  (" + c.detail + ")").c_str());
    }
    std::set<int> expected(expectFail.begin(), expectFail.end());
    if (failed != expected) {
        std::printf("failing criteria differ from the expected set\n");
        return 1;
    }
    return 0;
}
