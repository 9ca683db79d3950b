#include "ncjet/demo.hpp"

#include <chrono>
#include <stdexcept>

namespace ncjet {

namespace {

std::string ms(std::chrono::steady_clock::duration d) {
    return std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(d).count()) + " ms";
}

std::string vecText(const Vec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + toString(v[i]);
    return s + ")";
}

const char* quatName(int h) {
    static const char* names[] = {"1", "i", "j", "k"};
    return names[h];
}

}  // namespace

bool DemoReport::ok() const { return firstFailure() == nullptr; }

const Claim* DemoReport::firstFailure() const {
    for (const auto& c : claims)
        if (!c.pass) return &c;
    return nullptr;
}

std::unique_ptr<QuaternionModel> buildQuaternionModel(bool corrupt) {
    auto m = std::make_unique<QuaternionModel>();
    m->calc = quaternionCalculus();
    const Calculus& c = *m->calc;
    m->jets = std::make_unique<Jets>(m->calc, regularBimodule(c.alg));
    Jets& jets = *m->jets;

    AffineSpace s = solveBimoduleConnections(c, BimoduleAnsatz::FrameConstant);
    if (s.empty) throw std::logic_error("quaternion calculus has no frame-constant bimodule connection");
    m->levi = bimoduleConnectionAt(c, s, s.particular);

    const Tensor& oo = forms(c, 1, c.omega[1]);
    m->metric = oo.pair(c.frame.col(0), c.frame.col(1)) - oo.pair(c.frame.col(1), c.frame.col(0));

    const SymModule& s1 = jets.sym(1);
    const SymModule& s2 = jets.sym(2);
    m->toOmega1S1 = unitIntoS1(jets);
    m->metricSym = solve(s2.include, Mat::fromCols({m->toOmega1S1 * m->metric}, s2.include.rows())).col(0);
    if (auto s11 = symmetrizerRetraction(jets, m->levi, corrupt))
        m->halfSigma = *s11;
    else
        m->failure = "½(id + σ) is not a retraction onto S^2";

    m->partials = partialOps(c);
    for (int h = 0; h < 4; ++h) m->right.push_back(c.alg->rightMul(c.alg->basisVec(h)));
    m->leftK = c.alg->leftMul(c.alg->basisVec(3));

    if (m->failure.empty()) {
        try {
            Connection flat = exteriorConnection(c, jets.base());
            m->quant = std::make_unique<Quantization>(
                buildQuantization(jets, m->levi, flat, {Mat::identity(s1.mod.dim), m->halfSigma}));
        } catch (const std::domain_error& e) {
            m->failure = e.what();
        }
    }
    if (m->quant) {
        m->generators = {GradedSymbol::of(0, m->right[1]), GradedSymbol::of(0, m->right[2]),
                         GradedSymbol::of(1, m->quant->symbol(m->partials[0], 1)),
                         GradedSymbol::of(1, m->quant->symbol(m->partials[1], 1))};
        m->generatorNames = {"x_i", "x_j", "p_i", "p_j"};
    }
    return m;
}

DemoReport demoQuaternion(bool corrupt) {
    DemoReport rep;
    auto add = [&](int group, std::string name, bool pass, std::string detail = {}) {
        rep.claims.push_back({group, std::move(name), pass, std::move(detail)});
    };

    auto model = buildQuaternionModel(corrupt);
    QuaternionModel& m = *model;
    const Calculus& c = *m.calc;
    Jets& jets = *m.jets;

    // connection on Ω^1
    auto t1 = std::chrono::steady_clock::now();
    AffineSpace general = solveBimoduleConnections(c);
    auto t2 = std::chrono::steady_clock::now();
    AffineSpace frameConst = solveBimoduleConnections(c, BimoduleAnsatz::FrameConstant);
    add(1, "bimodule connections form an affine space of dimension 0", !general.empty && general.direction.dim() == 0,
        "dimension " + std::to_string(general.direction.dim()) + "; frame-constant ansatz: dimension " +
            std::to_string(frameConst.direction.dim()));
    add(1, "frame-constant bimodule connection is unique", !frameConst.empty && frameConst.direction.dim() == 0);
    add(1, "bimodule connection axioms", checkBimoduleConnection(c, m.levi).ok());
    bool parallel = true;
    for (int a = 0; a < c.frame.cols(); ++a) parallel = parallel && isZero(m.levi.base.nabla * c.frame.col(a));
    add(1, "∇di = ∇dj = 0", parallel);
    const Tensor& oo = forms(c, 1, c.omega[1]);
    bool flip = true;
    for (int a = 0; a < c.frame.cols(); ++a)
        for (int b = 0; b < c.frame.cols(); ++b)
            flip = flip && m.levi.sigma * oo.pair(c.frame.col(a), c.frame.col(b)) ==
                               Rat(-1) * oo.pair(c.frame.col(b), c.frame.col(a));
    add(1, "σ(ω⊗ν) = −ν⊗ω on frame pairs", flip);
    add(1, "torsion = 0", torsion(c, m.levi.base).isZero());
    add(1, "g spans ker ∧", isZero(wedge(c, 1, 1) * m.metric) && kernelOf(wedge(c, 1, 1)).dim() == 4);
    add(1, "∇g = 0", isZero(metricCompat(c, m.levi, m.metric)));
    add(1, "curvature = 0", curvature(c, m.levi.base).isZero());
    auto t3 = std::chrono::steady_clock::now();
    // timings only show up on failure so reports stay reproducible
    bool fast = t2 - t1 < std::chrono::seconds(1);
    add(1, "connection solve under 1 s", fast, fast ? "" : ms(t2 - t1) + " (all checks " + ms(t3 - t1) + ")");

    // jets and the symbol connection chain
    const int jetDims[] = {4, 12, 16, 16};
    for (int n = 0; n <= 3; ++n) {
        int d = jets.holonomic(n).mod.dim;
        add(2, "dim J^" + std::to_string(n) + " = " + std::to_string(jetDims[n]), d == jetDims[n], std::to_string(d));
    }
    for (int n = 1; n <= 3; ++n) {
        Report ex = exactnessReport(jets, n);
        add(2, "jet sequence exact at order " + std::to_string(n), ex.ok(),
            ex.ok() ? std::string() : ex.firstFailure()->name + " " + ex.firstFailure()->detail);
        int e = jets.elementalSpan(n).dim(), d = jets.holonomic(n).mod.dim;
        add(2, "J^" + std::to_string(n) + " equals its elemental span", e == d, std::to_string(e) + " of " + std::to_string(d));
    }
    const int symDims[] = {8, 4, 0};
    for (int n = 1; n <= 3; ++n) {
        int d = jets.sym(n).mod.dim;
        add(2, "dim S^" + std::to_string(n) + " = " + std::to_string(symDims[n - 1]), d == symDims[n - 1], std::to_string(d));
    }
    {
        const SymModule& s2 = jets.sym(2);
        const Bimodule& src = forms(c, 1, jets.sym(1).mod).mod;
        bool retract = m.halfSigma.rows() == s2.mod.dim && m.halfSigma * s2.include == Mat::identity(s2.mod.dim) &&
                       isLeftLinear(src, s2.mod, m.halfSigma) && isRightLinear(src, s2.mod, m.halfSigma);
        add(2, "s^{1,1} = ½(id + σ) is a bimodule retraction of ι_∧", retract, m.failure);
    }
    if (!m.quant) {
        add(2, "quantization chain", false, m.failure);
        return rep;
    }
    const Quantization& q = *m.quant;
    add(2, "quantization cap is 3", q.cap() == 3, std::to_string(q.cap()));
    const Mat& nabla2 = q.chain().nabla.at(2);
    for (int h = 0; h < 4; ++h) {
        Rat re = c.alg->mult[3][h][0];
        Vec expected = Rat(-re) * m.metricSym;
        Vec got = nabla2.col(h);
        add(2, std::string("∇²(") + quatName(h) + ") = −Re(k" + quatName(h) + ")·g", got == expected,
            "coefficient of g: " + toString(-re));
    }

    // ι²(g) inside J^2
    {
        const JetModule& j2 = jets.holonomic(2);
        auto jet = [&](int h) { return j2.prolong.col(h); };
        Vec lhs = j2.symInclude * m.metricSym;
        Vec rhs = j2.mod.left[2] * jet(1) - j2.mod.left[1] * jet(2) + jet(3) + j2.mod.left[3] * jet(0);
        add(3, "ι²(g) = j·j²(i) − i·j²(j) + j²(k) + k·j²(1)", lhs == rhs);
    }

    // left multiplication by k
    {
        const Mat& lk = m.leftK;
        auto o = q.order(lk);
        add(4, "order(L_k) = 2", o && *o == 2, o ? std::to_string(*o) : "none");
        Mat second = q.homogeneous(lk, 2), first = q.homogeneous(lk, 1), zeroth = q.homogeneous(lk, 0);
        Mat e2(4, 4), e1(4, 4);
        e2(0, 3) = -4;
        e1(2, 1) = 2;   // i -> 2j
        e1(1, 2) = -2;  // j -> -2i
        e1(0, 3) = 4;   // k -> 4
        std::string vals;
        for (int h = 0; h < 4; ++h) vals += std::string(h ? ", " : "") + quatName(h) + " -> " + vecText(second.col(h));
        add(4, "(L_k)^(2)(h) = −4 h_k", second == e2, vals);
        vals.clear();
        for (int h = 0; h < 4; ++h) vals += std::string(h ? ", " : "") + quatName(h) + " -> " + vecText(first.col(h));
        add(4, "(L_k)^(1)(h) = 2h_i j − 2h_j i + 4h_k", first == e1, vals);
        add(4, "(L_k)^(0) = R_k", zeroth == m.right[3]);
        add(4, "L_k = (L_k)^(0) + (L_k)^(1) + (L_k)^(2)", zeroth + first + second == lk);
        add(4, "[L_k]^2 on g = −4", q.gradedPiece(lk, 2) * m.metricSym == Vec{-4, 0, 0, 0});
        Mat comm = m.partials[0] * m.partials[1] - m.partials[1] * m.partials[0];
        rep.notes.push_back(std::string("(L_k)^(2) = 2(∂_i∘∂_j − ∂_j∘∂_i): ") + (second == Rat(2) * comm ? "yes" : "no"));
        rep.notes.push_back(std::string("(L_k)^(2) = 2(∂_j∘∂_i − ∂_i∘∂_j): ") + (second == Rat(-2) * comm ? "yes" : "no"));
    }

    // star products of x_i, x_j, p_i, p_j
    {
        const auto& g = m.generators;
        const auto& names = m.generatorNames;
        const int n = static_cast<int>(g.size());
        std::vector<std::vector<HPoly>> formal(n, std::vector<HPoly>(n));
        std::vector<std::vector<GradedSymbol>> prod(n, std::vector<GradedSymbol>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                formal[a][b] = q.starFormal(g[a], g[b]);
                prod[a][b] = q.product(g[a], g[b]);
            }
        GradedSymbol one = q.identitySymbol();
        {
            HPoly expect;
            expect.coeffs[0] = Rat(-1) * prod[0][2];
            expect.coeffs[1] = one;
            add(5, "p_i ⋆̂ x_i = −x_i·p_i + h·id", formal[2][0] == expect.normalize());
        }
        for (Rat hbar : {Rat(0), Rat(1), Rat(2, 3)}) {
            const std::string at = " at ℏ = " + toString(hbar);
            std::vector<std::vector<GradedSymbol>> star(n, std::vector<GradedSymbol>(n));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) star[a][b] = formal[a][b].eval(hbar);
            auto check = [&](const std::string& name, auto pred) {
                std::string bad;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        auto r = pred(a, b);
                        if (r && !*r) bad += (bad.empty() ? "" : ", ") + names[a] + "⋆" + names[b];
                    }
                add(5, name + at, bad.empty(), bad.empty() ? "" : "fails for " + bad);
            };
            auto isX = [](int a) { return a < 2; };
            check("x_a⋆x_b = x_a·x_b", [&](int a, int b) -> std::optional<bool> {
                if (!isX(a) || !isX(b)) return std::nullopt;
                return star[a][b] == prod[a][b];
            });
            check("p_a⋆x_b = −x_b·p_a + ℏδ_ab", [&](int a, int b) -> std::optional<bool> {
                if (isX(a) || !isX(b)) return std::nullopt;
                GradedSymbol expect = Rat(-1) * prod[b][a];
                if (a - 2 == b) expect = expect + hbar * one;
                return star[a][b] == expect;
            });
            check("x_a⋆p_b = x_a·p_b", [&](int a, int b) -> std::optional<bool> {
                if (!isX(a) || isX(b)) return std::nullopt;
                return star[a][b] == prod[a][b];
            });
            check("p_a⋆p_b = p_a·p_b", [&](int a, int b) -> std::optional<bool> {
                if (isX(a) || isX(b)) return std::nullopt;
                return star[a][b] == prod[a][b];
            });
            add(5, "p_i⋆p_i = p_j⋆p_j = 0" + at, star[2][2].isZero() && star[3][3].isZero());
            add(5, "p_i⋆p_j = −p_j⋆p_i" + at, star[2][3] == Rat(-1) * star[3][2]);
            if (sgn(hbar) == 0) check("star table equals the symbol product table", [&](int a, int b) -> std::optional<bool> {
                return star[a][b] == prod[a][b];
            });
            if (hbar == 1) check("q maps the star table to compositions", [&](int a, int b) -> std::optional<bool> {
                return q.quantize(star[a][b]) == q.quantize(g[a]) * q.quantize(g[b]);
            });
        }
    }
    return rep;
}

}  // namespace ncjet
