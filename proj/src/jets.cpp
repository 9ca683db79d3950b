#include "ncjet/jets.hpp"

#include <stdexcept>

namespace ncjet {

namespace {

JetFlavor lowerFlavor(JetFlavor f) { return f == JetFlavor::Nonholonomic ? f : JetFlavor::Holonomic; }

std::string jetLabel(int n, JetFlavor f, const std::string& base) {
    std::string o = std::to_string(n);
    switch (f) {
        case JetFlavor::Nonholonomic: return "J(" + o + ")(" + base + ")";
        case JetFlavor::Sesquiholonomic: return "J{" + o + "}(" + base + ")";
        default: return "J" + o + "(" + base + ")";
    }
}

Mat coordsIn(const Subspace& s, const Mat& cols, const std::string& what) {
    Mat out(s.dim(), cols.cols());
    for (int j = 0; j < cols.cols(); ++j) {
        Vec v = cols.col(j);
        if (!s.contains(v)) throw std::domain_error(what + ": image leaves the jet carrier");
        out.setCol(j, s.coords(v));
    }
    return out;
}

std::string idx(int a) { return std::to_string(a); }
std::string idx(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

}  // namespace

const char* toString(JetFlavor f) {
    switch (f) {
        case JetFlavor::Nonholonomic: return "nonholonomic";
        case JetFlavor::Sesquiholonomic: return "sesquiholonomic";
        default: return "holonomic";
    }
}

Jets::Jets(CalculusPtr calc, Bimodule e) : calc_(std::move(calc)), e_(std::move(e)) {
    if (!sameAlgebra(*calc_->alg, *e_.alg)) throw std::invalid_argument("module is over a different algebra");
}

const JetModule& Jets::holonomic(int n) { return jet(n, JetFlavor::Holonomic); }
const JetModule& Jets::sesquiholonomic(int n) { return jet(n, JetFlavor::Sesquiholonomic); }
const JetModule& Jets::nonholonomic(int n) { return jet(n, JetFlavor::Nonholonomic); }

const JetModule& Jets::jet(int n, JetFlavor f) {
    if (n < 0) throw std::invalid_argument("jet order must be >= 0");
    if (n <= 1) f = JetFlavor::Holonomic;
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_pair(n, static_cast<int>(f));
    auto it = jets_.find(key);
    if (it == jets_.end()) it = jets_.emplace(key, build(n, f)).first;
    return *it->second;
}

std::shared_ptr<JetModule> Jets::build(int n, JetFlavor f) {
    const Calculus& c = *calc_;
    auto j = std::make_shared<JetModule>();
    j->order = n;
    j->flavor = f;
    if (n == 0) {
        j->mod = e_;
        j->carrier = fullSubspace(e_.dim);
        j->embed = j->prolong = j->symInclude = Mat::identity(e_.dim);
        return j;
    }
    if (n == 1) {
        const PairModule& p = pair(e_);
        j->mod = p.mod;
        j->lower = e_;
        j->carrier = fullSubspace(p.mod.dim);
        j->embed = Mat::identity(p.mod.dim);
        j->proj = p.pi;
        j->rhoL = p.rho;
        j->prolong = p.jet;
        j->symInclude = p.iota;
        return j;
    }
    if (n > 1 && f != JetFlavor::Nonholonomic && c.maxDegree < 2)
        throw std::out_of_range("holonomic jets of order >= 2 need Ω2");
    const JetModule& low = jet(n - 1, lowerFlavor(f));
    const PairModule& p = pair(low.mod);
    j->lower = low.mod;
    if (f == JetFlavor::Nonholonomic) {
        j->mod = p.mod;
        j->carrier = fullSubspace(p.mod.dim);
    } else {
        const PairModule& q = pair(low.lower);
        Mat p1l = blockDiag(low.embed, formsMap(c, 1, low.mod, q.mod, low.embed));
        Mat cons = dTildeI(low.lower);
        if (f == JetFlavor::Holonomic) cons = vstack(cons, dTildeII(low.lower));
        j->carrier = kernelOf(cons * p1l);
        j->mod = restrictTo(p.mod, j->carrier, jetLabel(n, f, e_.label));
    }
    j->embed = j->carrier.embedding();
    j->proj = p.pi * j->embed;
    j->rhoL = p.rho * j->embed;
    j->prolong = coordsIn(j->carrier, p.jet * low.prolong, "prolongation");
    if (f == JetFlavor::Holonomic) {
        const SymModule& s = sym(n);
        const SymModule& s1 = sym(n - 1);
        Mat img = p.iota * formsMap(c, 1, s1.mod, low.mod, low.symInclude) * s.include;
        j->symInclude = coordsIn(j->carrier, img, "symbol inclusion");
    }
    return j;
}

const SymModule& Jets::sym(int n) {
    if (n < 0) throw std::invalid_argument("symmetric order must be >= 0");
    std::lock_guard<std::recursive_mutex> lock(mu_);
    while (static_cast<int>(syms_.size()) <= n) syms_.push_back(buildSym(static_cast<int>(syms_.size())));
    return *syms_[n];
}

std::shared_ptr<SymModule> Jets::buildSym(int n) {
    const Calculus& c = *calc_;
    auto s = std::make_shared<SymModule>();
    s->order = n;
    if (n == 0) {
        s->mod = e_;
        return s;
    }
    if (n == 1) {
        s->mod = forms(c, 1, e_).mod;
        s->include = Mat::identity(s->mod.dim);
        return s;
    }
    if (c.maxDegree < 2) throw std::out_of_range("symmetric forms of order >= 2 need Ω2");
    const SymModule& prev = *syms_[n - 1];
    const SymModule& prev2 = *syms_[n - 2];
    const Tensor& f1 = forms(c, 1, prev.mod);
    Mat inc = formsMap(c, 1, prev.mod, forms(c, 1, prev2.mod).mod, prev.include);
    Subspace k = kernelOf(wedgeFirst(c, 1, 1, prev2.mod) * inc);
    s->mod = restrictTo(f1.mod, k, "S" + std::to_string(n) + "(" + e_.label + ")");
    s->include = k.embedding();
    return s;
}

Mat Jets::dTildeI(const Bimodule& g) {
    const PairModule& q = pair(g);
    const PairModule& qq = pair(q.mod);
    return formsMap(*calc_, 1, q.mod, g, q.pi) * qq.rho - q.rho * qq.pi;
}

Mat Jets::dTildeII(const Bimodule& g) {
    const PairModule& q = pair(g);
    const PairModule& qq = pair(q.mod);
    return formsOperator(*calc_, 1, q.mod, g, q.pi, q.rho, Rat(1)) * qq.rho;
}

const TwistedFormPair& Jets::twisted() {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (!twisted_) twisted_ = std::make_shared<TwistedFormPair>(twistedPair(*calc_, e_));
    return *twisted_;
}

Mat Jets::dTilde() { return vstack(dTildeI(e_), dTildeII(e_)); }

Mat Jets::delta(int h, int k) {
    if (h < 1) throw std::invalid_argument("δ needs h >= 1");
    const Calculus& c = *calc_;
    if (k + 1 > c.maxDegree) throw std::out_of_range("δ: degree overflow");
    const SymModule& s = sym(h);
    const SymModule& s1 = sym(h - 1);
    Mat m = wedgeFirst(c, k, 1, s1.mod) * formsMap(c, k, s.mod, forms(c, 1, s1.mod).mod, s.include);
    return k % 2 ? -m : m;
}

const Mat& Jets::spencer(int n, int m, JetFlavor f) {
    if (n < 1) throw std::invalid_argument("Spencer operators need n >= 1");
    if (n <= 1) f = JetFlavor::Holonomic;
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_tuple(n, m, static_cast<int>(f));
    auto it = spencer_.find(key);
    if (it != spencer_.end()) return *it->second;
    const JetModule& j = jet(n, f);
    Rat sign = m % 2 ? 1 : -1;
    auto op = std::make_shared<Mat>(formsOperator(*calc_, m, j.mod, j.lower, j.proj, j.rhoL, sign));
    return *spencer_.emplace(key, std::move(op)).first->second;
}

Mat Jets::nu(int m) {
    const Calculus& c = *calc_;
    if (m + 2 > c.maxDegree) throw std::out_of_range("ν: degree overflow");
    const TwistedFormPair& t = twisted();
    const Tensor& src = forms(c, m, t.mod);
    const Tensor& dst = forms(c, m + 2, e_);
    const int n1 = t.firstDim, n2 = t.mod.dim - t.firstDim;
    Mat out(dst.mod.dim, src.mod.dim);
    for (int s = 0; s < src.mod.dim; ++s) {
        Vec acc(dst.mod.dim);
        for (const auto& [ix, coef] : src.lift[s]) {
            int i = ix / t.mod.dim, x = ix % t.mod.dim;
            if (x < n1) {
                Rat sg = m % 2 ? -coef : coef;
                acc = acc + sg * wedgeVec(c, m + 1, 1, e_, c.d[m].col(i), unitVec(n1, x));
            } else {
                acc = acc + coef * wedgeVec(c, m, 2, e_, unitVec(c.dim(m), i), unitVec(n2, x - n1));
            }
        }
        out.setCol(s, acc);
    }
    return out;
}

Mat Jets::inclusion(int n, JetFlavor a, JetFlavor b) {
    if (static_cast<int>(a) < static_cast<int>(b)) throw std::invalid_argument("inclusion goes toward fewer constraints");
    const JetModule& ja = jet(n, a);
    if (n <= 1 || a == b) return Mat::identity(ja.mod.dim);
    const JetModule& jb = jet(n, b);
    Mat t = inclusion(n - 1, lowerFlavor(a), lowerFlavor(b));
    Mat p1t = blockDiag(t, formsMap(*calc_, 1, ja.lower, jb.lower, t));
    return coordsIn(jb.carrier, p1t * ja.embed, "flavor inclusion");
}

Subspace Jets::elementalSpan(int n) {
    const JetModule& j = holonomic(n);
    std::vector<Vec> gens;
    for (int e = 0; e < j.prolong.cols(); ++e) gens.push_back(j.prolong.col(e));
    return leftSubmodule(j.mod, gens);
}

Subspace Jets::holonomicViaSpencer(int n) {
    if (n < 2) throw std::invalid_argument("holonomicViaSpencer needs n >= 2");
    const JetModule& sq = sesquiholonomic(n);
    Subspace k = kernelOf(spencer(n - 1, 1) * spencer(n, 0, JetFlavor::Sesquiholonomic));
    return spanOfCols(sq.embed * k.embedding());
}

Subspace Jets::carrierIn(int n, JetFlavor f) { return jet(n, f).carrier; }

SpencerComplexResult spencerComplex(Jets& jets, int n) {
    const Calculus& c = jets.calc();
    if (n < 1) throw std::invalid_argument("Spencer complex needs n >= 1");
    if (n > c.maxDegree) throw std::out_of_range("Spencer complex: degree overflow");
    SpencerComplexResult r;
    const std::string base = jets.base().label;
    r.objects.push_back(base);
    r.dims.push_back(jets.base().dim);
    r.objects.push_back(jets.holonomic(n).mod.label);
    r.dims.push_back(jets.holonomic(n).mod.dim);
    r.maps.push_back(jets.holonomic(n).prolong);
    for (int m = 0; m < n; ++m) {
        int order = n - m - 1;
        const Bimodule& target = forms(c, m + 1, jets.holonomic(order).mod).mod;
        r.objects.push_back(target.label);
        r.dims.push_back(target.dim);
        r.maps.push_back(jets.spencer(n - m, m));
    }
    r.isComplex = true;
    for (size_t i = 0; i + 1 < r.maps.size(); ++i)
        if (!(r.maps[i + 1] * r.maps[i]).isZero()) r.isComplex = false;
    std::vector<int> ranks;
    for (const auto& m : r.maps) ranks.push_back(rank(m));
    for (size_t i = 0; i < r.dims.size(); ++i) {
        int in = i == 0 ? 0 : ranks[i - 1];
        int out = i < ranks.size() ? ranks[i] : 0;
        r.cohomologyDims.push_back(r.dims[i] - in - out);
    }
    return r;
}

Report bicomplexCheck(Jets& jets, int n, bool flipDeltaSign) {
    const Calculus& c = jets.calc();
    if (n < 1) throw std::invalid_argument("bicomplex needs n >= 1");
    if (n > c.maxDegree) throw std::out_of_range("bicomplex: degree overflow");
    Report rep;
    // row k: Ω^k S^{n-k} -> Ω^k J^{n-k} -> Ω^k J^{n-k-1}
    auto sym = [&](int k) { return formsMap(c, k, jets.sym(n - k).mod, jets.holonomic(n - k).mod, jets.holonomic(n - k).symInclude); };
    auto proj = [&](int k) {
        const JetModule& j = jets.holonomic(n - k);
        return formsMap(c, k, j.mod, j.lower, j.proj);
    };
    auto dimOf = [&](int k, const Bimodule& m) { return forms(c, k, m).mod.dim; };
    const JetModule& top = jets.holonomic(n);
    rep.add("top right square", proj(0) * top.prolong == jets.holonomic(n - 1).prolong);
    rep.add("top column", (jets.spencer(n, 0) * top.prolong).isZero());
    std::vector<Mat> vl, vm, vr;
    for (int k = 0; k <= n; ++k) {
        int dl = dimOf(k, jets.sym(n - k).mod), dm = dimOf(k, jets.holonomic(n - k).mod);
        int dr = n - k >= 1 ? dimOf(k, jets.holonomic(n - k - 1).mod) : 0;
        if (n - k >= 1) rep.add("row " + idx(k) + " composes to zero", (proj(k) * sym(k)).isZero());
        rep.add("row " + idx(k) + " dims", dm == dl + dr,
                idx(dl) + " + " + idx(dr) + " vs " + idx(dm));
        if (k == n || k + 1 > c.maxDegree) continue;
        Mat left = jets.delta(n - k, k);
        if (!flipDeltaSign) left = -left;
        Mat mid = jets.spencer(n - k, k);
        rep.add("left square " + idx(k), mid * sym(k) == sym(k + 1) * left);
        if (n - k - 1 >= 1) {
            Mat right = jets.spencer(n - k - 1, k);
            rep.add("right square " + idx(k), right * proj(k) == proj(k + 1) * mid);
            vr.push_back(right);
        }
        vl.push_back(left);
        vm.push_back(mid);
    }
    for (size_t k = 0; k + 1 < vl.size(); ++k) {
        rep.add("left column " + idx(static_cast<int>(k)), (vl[k + 1] * vl[k]).isZero());
        rep.add("middle column " + idx(static_cast<int>(k)), (vm[k + 1] * vm[k]).isZero());
    }
    for (size_t k = 0; k + 1 < vr.size(); ++k)
        rep.add("right column " + idx(static_cast<int>(k)), (vr[k + 1] * vr[k]).isZero());
    return rep;
}

Report exactnessReport(Jets& jets, int n) {
    if (n < 1) throw std::invalid_argument("exactness needs n >= 1");
    Report rep;
    const JetModule& j = jets.holonomic(n);
    const JetModule& low = jets.holonomic(n - 1);
    const SymModule& s = jets.sym(n);
    int rp = rank(j.proj), ri = rank(j.symInclude);
    rep.add("π surjective", rp == low.mod.dim, idx(rp) + " of " + idx(low.mod.dim));
    rep.add("ι injective", ri == s.mod.dim, idx(ri) + " of " + idx(s.mod.dim));
    rep.add("im ι = ker π", spanOfCols(j.symInclude) == kernelOf(j.proj));
    rep.add("dims additive", j.mod.dim == s.mod.dim + low.mod.dim,
            idx(j.mod.dim) + " = " + idx(s.mod.dim) + " + " + idx(low.mod.dim));
    rep.add("π j = j", j.proj * j.prolong == low.prolong);
    const PairModule& p = jets.pair(low.mod);
    Subspace meet = intersect(j.carrier, spanOfCols(p.jet));
    Subspace prol = spanOfCols(j.embed * j.prolong);
    rep.add("pullback square", meet == prol, "intersection dim " + idx(meet.dim()));
    return rep;
}

Report spencerPropertySuite(Jets& jets, int maxOrder) {
    const Calculus& c = jets.calc();
    const JetFlavor flavors[] = {JetFlavor::Holonomic, JetFlavor::Sesquiholonomic, JetFlavor::Nonholonomic};
    Report rep;
    for (int n = 1; n <= maxOrder; ++n) {
        const std::string o = " n=" + idx(n);
        for (JetFlavor f : flavors) {
            if (n >= 2 && f != JetFlavor::Nonholonomic && c.maxDegree < 2) continue;
            const JetModule& j = jets.jet(n, f);
            rep.add(std::string("π j = j ") + toString(f) + o, j.proj * j.prolong == jets.jet(n - 1, lowerFlavor(f)).prolong);
        }
        const JetModule& j = jets.holonomic(n);
        const Mat& s0 = jets.spencer(n, 0);
        rep.add("S j = 0" + o, (s0 * j.prolong).isZero());
        rep.add("ker S = span j" + o, kernelOf(s0) == spanOfCols(j.prolong));
        if (n == 1)
            for (int m = 0; m + 1 <= c.maxDegree; ++m) {
                int r = rank(jets.spencer(1, m));
                int target = forms(c, m + 1, jets.base()).mod.dim;
                rep.add("S^{1," + idx(m) + "} surjective", r == target, idx(r) + " of " + idx(target));
            }
        if (n >= 2)
            for (int m = 0; m + 2 <= c.maxDegree; ++m)
                rep.add("S S = 0 " + idx(n, m), (jets.spencer(n - 1, m + 1) * jets.spencer(n, m)).isZero());
        if (n < 2 || c.maxDegree < 2) continue;
        const JetModule& sq = jets.sesquiholonomic(n);
        rep.add("holonomic inside sesquiholonomic" + o, isSubspaceOf(j.carrier, sq.carrier));
        const JetModule& low = jets.holonomic(n - 1);
        const PairModule& q = jets.pair(low.lower);
        Mat p1l = blockDiag(low.embed, formsMap(c, 1, low.mod, q.mod, low.embed));
        rep.add("holonomic = sesquiholonomic ∩ ker D̃ᴵᴵ" + o,
                intersect(sq.carrier, kernelOf(jets.dTildeII(low.lower) * p1l)) == j.carrier);
        rep.add("holonomic via Spencer" + o, jets.holonomicViaSpencer(n) == j.carrier);
        const std::pair<JetFlavor, JetFlavor> incl[] = {{JetFlavor::Holonomic, JetFlavor::Sesquiholonomic},
                                                        {JetFlavor::Sesquiholonomic, JetFlavor::Nonholonomic},
                                                        {JetFlavor::Holonomic, JetFlavor::Nonholonomic}};
        for (auto [a, b] : incl) {
            std::string name = std::string(toString(a)) + " -> " + toString(b) + o;
            Mat t;
            try {
                t = jets.inclusion(n, a, b);
            } catch (const std::domain_error& e) {
                rep.add("inclusion " + name, false, e.what());
                continue;
            }
            rep.add("inclusion " + name, rank(t) == t.cols());
            const JetModule& ja = jets.jet(n, a);
            const JetModule& jb = jets.jet(n, b);
            Mat tl = jets.inclusion(n - 1, lowerFlavor(a), lowerFlavor(b));
            for (int m = 0; m + 1 <= c.maxDegree; ++m) {
                Mat lhs = formsMap(c, m + 1, ja.lower, jb.lower, tl) * jets.spencer(n, m, a);
                Mat rhs = jets.spencer(n, m, b) * formsMap(c, m, ja.mod, jb.mod, t);
                rep.add("Spencer commutes with " + name + " m=" + idx(m), lhs == rhs);
            }
        }
    }
    return rep;
}

Report twistedIdentities(Jets& jets, int maxM) {
    const Calculus& c = jets.calc();
    Report rep;
    const TwistedFormPair& t = jets.twisted();
    Jets overJ1(jets.calcPtr(), jets.holonomic(1).mod);
    const JetModule& jj = overJ1.holonomic(1);
    Mat dt = jets.dTilde();
    rep.add("D̃ is left linear", isLeftLinear(jj.mod, t.mod, dt));
    if (c.maxDegree >= 2) {
        Mat n0 = jets.nu(0);
        Mat beta = hstack(Mat(t.mod.dim - t.firstDim, t.firstDim), Mat::identity(t.mod.dim - t.firstDim));
        rep.add("ν^0 is the second projection", n0 == beta);
    }
    for (int m = 0; m <= maxM && m + 2 <= c.maxDegree; ++m) {
        Mat lhs = jets.spencer(1, m + 1) * overJ1.spencer(1, m);
        Mat rhs = -(jets.nu(m) * formsMap(c, m, jj.mod, t.mod, dt));
        rep.add("S S_J1 = -ν D̃ m=" + idx(m), lhs == rhs);
    }
    return rep;
}

Report restrictionSymbolCheck(Jets& jets, int n, int m) {
    const Calculus& c = jets.calc();
    Report rep;
    const JetModule& j = jets.holonomic(n);
    const Bimodule& x = forms(c, m, j.mod).mod;
    const Bimodule& y = forms(c, m + 1, j.lower).mod;
    const Mat& op = jets.spencer(n, m);
    const PairModule& p = jets.pair(x);
    AffineSpace lifts = solveMaps(p.mod, y, Linearity::LeftA, {composeConstraint(Mat::identity(y.dim), p.jet, op)});
    rep.add("order one lift exists " + idx(n, m), !lifts.empty);
    if (lifts.empty) return rep;
    rep.add("order one lift unique " + idx(n, m), lifts.direction.dim() == 0);
    Mat lift = unvec(lifts.particular, y.dim, p.mod.dim);
    Mat piForms = formsMap(c, m, j.mod, j.lower, j.proj);
    Mat symbol = wedgeFirst(c, 1, m, j.lower) * formsMap(c, 1, x, forms(c, m, j.lower).mod, piForms);
    rep.add("restriction symbol " + idx(n, m), lift * p.iota == symbol);
    return rep;
}

}  // namespace ncjet
