#include "ncjet/quantization.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncjet {

namespace {

AffineSpace liftSpace(Jets& jets, const Bimodule& f, const Mat& op, int n) {
    const JetModule& j = jets.holonomic(n);
    if (op.rows() != f.dim || op.cols() != jets.base().dim) throw std::invalid_argument("operator shape mismatch");
    return solveMaps(j.mod, f, Linearity::LeftA, {composeConstraint(Mat::identity(f.dim), j.prolong, op)});
}

Rat power(const Rat& x, int p) {
    if (p < 0) {
        if (sgn(x) == 0) throw std::invalid_argument("negative power of zero");
        return 1 / power(x, -p);
    }
    Rat r = 1;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

HOps multiply(const HOps& a, const HOps& b) {
    HOps out;
    for (const auto& [p, x] : a)
        for (const auto& [r, y] : b) {
            Mat m = x * y;
            auto it = out.find(p + r);
            if (it == out.end())
                out.emplace(p + r, std::move(m));
            else
                it->second += m;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second.isZero() ? out.erase(it) : std::next(it);
    return out;
}

bool sameOps(HOps a, HOps b) {
    for (auto* m : {&a, &b})
        for (auto it = m->begin(); it != m->end();) it = it->second.isZero() ? m->erase(it) : std::next(it);
    return a == b;
}

}  // namespace

std::optional<int> opOrder(Jets& jets, const Bimodule& f, const Mat& op, int cap) {
    for (int n = 0; n <= cap; ++n)
        if (!liftSpace(jets, f, op, n).empty) return n;
    return std::nullopt;
}

Mat opLift(Jets& jets, const Bimodule& f, const Mat& op, int n) {
    AffineSpace s = liftSpace(jets, f, op, n);
    if (s.empty) throw std::domain_error("operator has order above " + std::to_string(n));
    return unvec(s.particular, f.dim, jets.holonomic(n).mod.dim);
}

bool liftIsUnique(Jets& jets, const Bimodule& f, int n) {
    return liftSpace(jets, f, Mat(f.dim, jets.base().dim), n).direction.dim() == 0;
}

Mat symbolOf(Jets& jets, const Bimodule& f, const Mat& op, int n) {
    AffineSpace s = liftSpace(jets, f, op, n);
    if (s.empty) throw std::domain_error("operator has order above " + std::to_string(n));
    const JetModule& j = jets.holonomic(n);
    for (int k = 0; k < s.direction.dim(); ++k)
        if (!(unvec(s.direction.basis.row(k), f.dim, j.mod.dim) * j.symInclude).isZero())
            throw std::domain_error("symbol at order " + std::to_string(n) + " depends on the choice of lift");
    return unvec(s.particular, f.dim, j.mod.dim) * j.symInclude;
}

std::optional<Mat> retractionSolver(Jets& jets, int k) {
    const Calculus& c = jets.calc();
    const Bimodule& src = forms(c, 1, jets.sym(k).mod).mod;
    const SymModule& up = jets.sym(k + 1);
    Linearity lin = src.hasRight() && up.mod.hasRight() ? Linearity::Bilinear : Linearity::LeftA;
    Mat id = Mat::identity(up.mod.dim);
    AffineSpace s = solveMaps(src, up.mod, lin, {composeConstraint(id, up.include, id)});
    if (s.empty) return std::nullopt;
    return unvec(s.particular, up.mod.dim, src.dim);
}

Mat unitIntoS1(Jets& jets) {
    const Calculus& c = jets.calc();
    const Tensor& oe = forms(c, 1, jets.base());
    const int n = c.omega[1].dim;
    Mat unit(oe.mod.dim, n);
    for (int x = 0; x < n; ++x) unit.setCol(x, oe.pair(unitVec(n, x), c.alg->unit));
    return formsMap(c, 1, c.omega[1], jets.sym(1).mod, unit);
}

std::optional<Mat> symmetrizerRetraction(Jets& jets, const BimoduleConnection& b, bool flip) {
    if (jets.base().dim != jets.calc().alg->dim || b.sigma.rows() == 0) return std::nullopt;
    const SymModule& s2 = jets.sym(2);
    Mat u = unitIntoS1(jets);
    Mat sigma = u * b.sigma * inverse(u);
    Mat half = Rat(1, 2) * (Mat::identity(sigma.rows()) + (flip ? -sigma : sigma));
    if (!isSubspaceOf(spanOfCols(half), spanOfCols(s2.include))) return std::nullopt;
    Mat s = solve(s2.include, half);
    if (s * s2.include != Mat::identity(s2.mod.dim)) return std::nullopt;
    return s;
}

std::vector<Mat> partialOps(const Calculus& c) {
    const int f = c.frame.cols(), n = c.alg->dim;
    if (f == 0) throw std::invalid_argument(c.name + " has no declared frame");
    const Bimodule& o = c.omega[1];
    Mat frameMap(o.dim, f * n);
    for (int a = 0; a < f; ++a)
        for (int u = 0; u < n; ++u) frameMap.setCol(a * n + u, o.left[u] * c.frame.col(a));
    Mat coords = inverse(frameMap) * c.d0();
    std::vector<Mat> out;
    for (int a = 0; a < f; ++a) {
        Mat p(n, n);
        for (int u = 0; u < n; ++u)
            for (int h = 0; h < n; ++h) p(u, h) = coords(a * n + u, h);
        out.push_back(std::move(p));
    }
    return out;
}

GradedSymbol GradedSymbol::of(int degree, Mat m) {
    GradedSymbol s;
    s.parts.emplace(degree, std::move(m));
    return s.normalize();
}

GradedSymbol& GradedSymbol::normalize() {
    for (auto it = parts.begin(); it != parts.end();) it = it->second.isZero() ? parts.erase(it) : std::next(it);
    return *this;
}

Mat GradedSymbol::at(int degree, int rows, int cols) const {
    auto it = parts.find(degree);
    return it == parts.end() ? Mat(rows, cols) : it->second;
}

bool GradedSymbol::isZero() const {
    return std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.second.isZero(); });
}

int GradedSymbol::maxDegree() const {
    int d = -1;
    for (const auto& [k, m] : parts)
        if (!m.isZero()) d = std::max(d, k);
    return d;
}

GradedSymbol operator+(const GradedSymbol& a, const GradedSymbol& b) {
    GradedSymbol out = a;
    for (const auto& [k, m] : b.parts) {
        auto it = out.parts.find(k);
        if (it == out.parts.end())
            out.parts.emplace(k, m);
        else
            it->second += m;
    }
    return out.normalize();
}

GradedSymbol operator*(const Rat& s, const GradedSymbol& a) {
    GradedSymbol out;
    for (const auto& [k, m] : a.parts) out.parts.emplace(k, s * m);
    return out.normalize();
}

GradedSymbol operator-(const GradedSymbol& a, const GradedSymbol& b) { return a + Rat(-1) * b; }

bool operator==(const GradedSymbol& a, const GradedSymbol& b) {
    GradedSymbol x = a, y = b;
    return x.normalize().parts == y.normalize().parts;
}

HPoly& HPoly::normalize() {
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        it->second.normalize();
        it = it->second.isZero() ? coeffs.erase(it) : std::next(it);
    }
    return *this;
}

GradedSymbol HPoly::eval(const Rat& hbar) const {
    GradedSymbol out;
    for (const auto& [p, s] : coeffs) out = out + power(hbar, p) * s;
    return out;
}

bool HPoly::hasNegativePowers() const {
    return std::any_of(coeffs.begin(), coeffs.end(), [](const auto& c) { return c.first < 0 && !c.second.isZero(); });
}

HPoly operator+(const HPoly& a, const HPoly& b) {
    HPoly out = a;
    for (const auto& [p, s] : b.coeffs) out.coeffs[p] = out.coeffs[p] + s;
    return out.normalize();
}

HPoly operator-(const HPoly& a, const HPoly& b) {
    HPoly neg;
    for (const auto& [p, s] : b.coeffs) neg.coeffs[p] = Rat(-1) * s;
    return a + neg;
}

bool operator==(const HPoly& a, const HPoly& b) {
    HPoly x = a, y = b;
    x.normalize();
    y.normalize();
    if (x.coeffs.size() != y.coeffs.size()) return false;
    for (const auto& [p, s] : x.coeffs) {
        auto it = y.coeffs.find(p);
        if (it == y.coeffs.end() || !(it->second == s)) return false;
    }
    return true;
}

Quantization::Quantization(Jets& jets, Chain chain, int cap, std::optional<Bimodule> target)
    : jets_(&jets), chain_(std::move(chain)), cap_(cap), target_(target ? *target : jets.base()) {
    if (static_cast<int>(chain_.nabla.size()) != cap_) throw std::invalid_argument("quantization chain length differs from cap");
    for (int k = 0; k < cap_; ++k) {
        const SymModule& s = jets.sym(k);
        const JetModule& j = jets.holonomic(k);
        if (s.mod.dim == 0) {
            splits_.emplace_back(0, j.mod.dim);
            continue;
        }
        Mat split;
        try {
            split = opLift(jets, s.mod, chain_.nabla[k], k);
        } catch (const std::domain_error&) {
            throw std::domain_error("section law fails in degree " + std::to_string(k) + ": ∇^k has order above k");
        }
        if (split * j.symInclude != Mat::identity(s.mod.dim))
            throw std::domain_error("section law fails in degree " + std::to_string(k));
        splits_.push_back(std::move(split));
    }
}

int Quantization::requireOrder(const Mat& op) const {
    auto o = order(op);
    if (!o) throw std::domain_error("operator order exceeds " + std::to_string(cap_));
    if (*o >= cap_ && jets_->sym(*o).mod.dim > 0)
        throw std::domain_error("operator order " + std::to_string(*o) + " reaches the quantization cap");
    return *o;
}

void Quantization::requireEndo(const char* what) const {
    if (target_.id != source().id) throw std::logic_error(std::string(what) + " needs F = E");
}

std::optional<int> Quantization::order(const Mat& op) const { return opOrder(*jets_, target_, op, cap_); }

Mat Quantization::lift(const Mat& op, int n) const { return opLift(*jets_, target_, op, n); }

Mat Quantization::symbol(const Mat& op, int n) const {
    if (n >= cap_ && jets_->sym(n).mod.dim == 0) return Mat(target_.dim, 0);
    return symbolOf(*jets_, target_, op, n);
}

Mat Quantization::quantize(int k, const Mat& sigma) const {
    if (k < 0) throw std::invalid_argument("negative symbol degree");
    if (k >= cap_) {
        if (sigma.cols() != 0 && !sigma.isZero()) throw std::domain_error("symbol degree beyond the quantization cap");
        return Mat(target_.dim, source().dim);
    }
    if (sigma.rows() != target_.dim || sigma.cols() != chain_.nabla[k].rows())
        throw std::invalid_argument("symbol shape mismatch in degree " + std::to_string(k));
    return sigma * chain_.nabla[k];
}

Mat Quantization::quantize(const GradedSymbol& s) const {
    Mat out(target_.dim, source().dim);
    for (const auto& [k, m] : s.parts) out += quantize(k, m);
    return out;
}

Mat Quantization::quantize(const GradedSymbol& s, const Rat& hbar) const {
    Mat out(target_.dim, source().dim);
    for (const auto& [k, m] : s.parts) out += power(hbar, k) * quantize(k, m);
    return out;
}

Mat Quantization::truncate(const Mat& op, int k) const {
    Mat x = op;
    for (int j = requireOrder(op); j > k && j >= 0; --j) x -= quantize(j, symbol(x, j));
    return x;
}

Mat Quantization::gradedPiece(const Mat& op, int k) const {
    int o = requireOrder(op);
    if (k > o) return Mat(target_.dim, k < cap_ ? chain_.nabla[k].rows() : 0);
    return symbol(truncate(op, k), k);
}

GradedSymbol Quantization::totalSymbol(const Mat& op) const {
    GradedSymbol out;
    Mat x = op;
    for (int j = requireOrder(op); j >= 0; --j) {
        Mat s = symbol(x, j);
        if (j < cap_) out.parts.emplace(j, s);
        x -= quantize(j, s);
    }
    return out.normalize();
}

GradedSymbol Quantization::totalSymbol(const Mat& op, const Rat& hbar) const {
    if (sgn(hbar) == 0) throw std::invalid_argument("deformed total symbol needs a nonzero parameter");
    GradedSymbol out;
    for (const auto& [k, m] : totalSymbol(op).parts) out.parts.emplace(k, power(hbar, -k) * m);
    return out.normalize();
}

Mat Quantization::homogeneous(const Mat& op, int k) const { return quantize(k, gradedPiece(op, k)); }

GradedSymbol Quantization::product(const GradedSymbol& a, const GradedSymbol& b) const {
    requireEndo("symbol product");
    GradedSymbol out;
    for (const auto& [n, x] : a.parts)
        for (const auto& [m, y] : b.parts) {
            if (n + m >= cap_) {
                if (jets_->sym(n + m).mod.dim > 0) throw std::domain_error("symbol product beyond the quantization cap");
                continue;
            }
            out = out + GradedSymbol::of(n + m, symbol(quantize(n, x) * quantize(m, y), n + m));
        }
    return out;
}

HPoly Quantization::starFormal(const GradedSymbol& a, const GradedSymbol& b) const {
    requireEndo("star product");
    HPoly out;
    for (const auto& [n, x] : a.parts)
        for (const auto& [m, y] : b.parts) {
            HPoly term;
            for (const auto& [j, s] : totalSymbol(quantize(n, x) * quantize(m, y)).parts)
                term.coeffs[n + m - j] = GradedSymbol::of(j, s);
            out = out + term;
        }
    return out;
}

HPoly Quantization::starFormal(const HPoly& a, const HPoly& b) const {
    HPoly out;
    for (const auto& [p, x] : a.coeffs)
        for (const auto& [r, y] : b.coeffs) {
            HPoly term;
            for (const auto& [e, s] : starFormal(x, y).coeffs) term.coeffs[e + p + r] = s;
            out = out + term;
        }
    return out;
}

GradedSymbol Quantization::star(const GradedSymbol& a, const GradedSymbol& b, const Rat& hbar) const {
    return starFormal(a, b).eval(hbar);
}

HOps Quantization::quantizeFormal(const HPoly& p) const {
    HOps out;
    for (const auto& [e, s] : p.coeffs)
        for (const auto& [k, m] : s.parts) {
            Mat q = quantize(k, m);
            auto it = out.find(e + k);
            if (it == out.end())
                out.emplace(e + k, std::move(q));
            else
                it->second += q;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second.isZero() ? out.erase(it) : std::next(it);
    return out;
}

HPoly Quantization::totalSymbolFormal(const HOps& ops) const {
    HPoly out;
    for (const auto& [p, op] : ops) {
        HPoly term;
        for (const auto& [k, m] : totalSymbol(op).parts) term.coeffs[p - k] = GradedSymbol::of(k, m);
        out = out + term;
    }
    return out;
}

GradedSymbol Quantization::identitySymbol() const {
    requireEndo("identity symbol");
    return GradedSymbol::of(0, Mat::identity(source().dim));
}

int stableCap(Jets& jets, int maxCap) {
    for (int n = 1; n <= maxCap; ++n)
        if (jets.sym(n).mod.dim == 0) return n;
    return maxCap;
}

Quantization buildQuantization(Jets& jets, const BimoduleConnection& b, const Connection& onE, std::vector<Mat> retractions,
                               int maxCap) {
    const Calculus& c = jets.calc();
    const int cap = stableCap(jets, maxCap);
    if (onE.mod.id != jets.base().id) throw std::invalid_argument("connection is not on the jet base module");
    Quantization::Chain chain;
    for (int k = 0; k + 1 < cap; ++k) {
        const SymModule& up = jets.sym(k + 1);
        const Bimodule& src = forms(c, 1, jets.sym(k).mod).mod;
        Mat s;
        if (k < static_cast<int>(retractions.size()) && (retractions[k].rows() > 0 || up.mod.dim == 0) &&
            retractions[k].cols() == src.dim) {
            s = retractions[k];
        } else {
            auto solved = retractionSolver(jets, k);
            if (!solved) throw std::domain_error("no retraction of Ω1 S^" + std::to_string(k) + " onto S^" + std::to_string(k + 1));
            s = *solved;
        }
        if (s.rows() != up.mod.dim || s.cols() != src.dim) throw std::invalid_argument("retraction shape mismatch");
        if (s * up.include != Mat::identity(up.mod.dim))
            throw std::domain_error("s^{1," + std::to_string(k) + "} is not a retraction");
        if (!isLeftLinear(src, up.mod, s)) throw std::domain_error("s^{1," + std::to_string(k) + "} is not left linear");
        chain.retractions.push_back(std::move(s));
    }
    chain.symConnections.push_back(onE);
    if (cap > 2 && b.sigma.rows() == 0) throw std::domain_error("missing bimodule connection on Ω1");
    for (int k = 1; k + 1 < cap; ++k) {
        const Connection& prev = chain.symConnections.back();
        Connection t = tensorConnection(c, b, prev);
        const SymModule& sk = jets.sym(k);
        Mat nab = formsMap(c, 1, t.mod, sk.mod, chain.retractions[k - 1]) * t.nabla * sk.include;
        chain.symConnections.push_back(makeConnection(c, sk.mod, std::move(nab)));
    }
    chain.nabla.push_back(Mat::identity(jets.base().dim));
    for (int k = 1; k < cap; ++k)
        chain.nabla.push_back(chain.retractions[k - 1] * chain.symConnections[k - 1].nabla * chain.nabla[k - 1]);
    return Quantization(jets, std::move(chain), cap);
}

Report quantizationLaws(const Quantization& q, const std::vector<Mat>& ops) {
    Report r;
    Jets& jets = q.jets();
    const Bimodule& f = q.target();
    for (int k = 0; k < q.cap(); ++k) {
        const SymModule& s = jets.sym(k);
        if (s.mod.dim == 0) continue;
        AffineSpace basis = solveMaps(s.mod, f, Linearity::LeftA);
        bool section = true, kron = true, orderOk = true, total = true;
        for (int b = 0; b < basis.direction.dim(); ++b) {
            Mat sigma = unvec(basis.direction.basis.row(b), f.dim, s.mod.dim);
            Mat op = q.quantize(k, sigma);
            auto o = q.order(op);
            orderOk = orderOk && o && *o <= k;
            section = section && q.symbol(op, k) == sigma;
            for (int j = 0; j < q.cap(); ++j) {
                Mat piece = q.gradedPiece(op, j);
                kron = kron && (j == k ? piece == sigma : piece.isZero());
            }
            total = total && q.totalSymbol(op) == GradedSymbol::of(k, sigma);
        }
        const std::string tag = " in degree " + std::to_string(k);
        r.add("total symbol inverts q" + tag, total);
        r.add("section law" + tag, section);
        r.add("quantized order" + tag, orderOk);
        r.add("Kronecker law" + tag, kron);
    }
    if (jets.sym(0).mod.dim > 0) {
        Mat id = Mat::identity(f.dim);
        r.add("q^0 is the identity", f.id != q.source().id || q.quantize(0, id) == id);
    }
    for (size_t i = 0; i < ops.size(); ++i) {
        const Mat& op = ops[i];
        const std::string tag = " (operator " + std::to_string(i) + ")";
        auto o = q.order(op);
        if (!o) {
            r.add("finite order" + tag, false);
            continue;
        }
        const int n = *o;
        bool stable = true, lowers = true, nested = true, zeros = true, fromCap = true, partial = true;
        std::vector<Mat> trunc;
        for (int k = 0; k <= n + 1; ++k) trunc.push_back(q.truncate(op, k));
        for (int k = n; k <= n + 1; ++k) stable = stable && trunc[k] == op;
        // the recursion started from any bound above the order agrees
        Mat x = op;
        for (int j = q.cap(); j >= 0; --j) {
            if (j <= n + 1) fromCap = fromCap && x == trunc[j];
            if (j > 0) x -= q.quantize(j, q.symbol(x, j));
        }
        Mat sum(op.rows(), op.cols());
        for (int k = 0; k <= n + 1; ++k) {
            auto ok = q.order(trunc[k]);
            lowers = lowers && ok && *ok <= k;
            for (int h = 0; h <= n + 1; ++h) nested = nested && q.truncate(trunc[k], h) == trunc[std::min(h, k)];
            if (trunc[k].isZero())
                for (int h = 0; h <= k; ++h) zeros = zeros && trunc[h].isZero();
            sum += q.homogeneous(op, k);
            partial = partial && sum == trunc[k];
        }
        r.add("truncation independent of the bound" + tag, fromCap);
        r.add("truncation fixes operators of lower order" + tag, stable);
        r.add("truncation lowers order" + tag, lowers);
        r.add("nested truncations" + tag, nested);
        r.add("vanishing truncations propagate down" + tag, zeros);
        r.add("homogeneous partial sums are truncations" + tag, partial);
        r.add("reconstruction from homogeneous components" + tag, sum == op);
        r.add("q of the total symbol" + tag, q.quantize(q.totalSymbol(op)) == op);
    }
    return r;
}

Report starLaws(const Quantization& q, const std::vector<GradedSymbol>& gens, const std::vector<Rat>& hbars) {
    Report r;
    GradedSymbol one = q.identitySymbol();
    auto hp = [](const GradedSymbol& s) {
        HPoly p;
        p.coeffs[0] = s;
        return p.normalize();
    };
    bool unit = true, assoc = true, filtration = true, formal = true, formalInverse = true;
    for (const auto& a : gens) {
        unit = unit && q.starFormal(one, a) == hp(a) && q.starFormal(a, one) == hp(a);
        HOps qa = q.quantizeFormal(hp(a));
        formalInverse = formalInverse && q.totalSymbolFormal(qa) == hp(a);
        HOps base{{0, q.quantize(a)}};
        formalInverse = formalInverse && sameOps(q.quantizeFormal(q.totalSymbolFormal(base)), base);
        for (const auto& b : gens) {
            HPoly ab = q.starFormal(a, b);
            GradedSymbol prod = q.product(a, b);
            const int bound = a.maxDegree() + b.maxDegree() - 1;
            for (const auto& [p, s] : ab.coeffs) {
                if (p == 0)
                    filtration = filtration && s == prod;
                else
                    filtration = filtration && s.maxDegree() <= bound;
            }
            formal = formal && sameOps(q.quantizeFormal(ab), multiply(q.quantizeFormal(hp(a)), q.quantizeFormal(hp(b))));
            for (const auto& c : gens) {
                HPoly left = q.starFormal(ab, hp(c));
                HPoly right = q.starFormal(hp(a), q.starFormal(b, c));
                assoc = assoc && left == right;
            }
        }
    }
    r.add("unit of the formal star product", unit);
    r.add("associativity of the formal star product", assoc);
    r.add("filtration of the formal star product", filtration);
    r.add("formal quantization is multiplicative", formal);
    r.add("formal deformed total symbol inverts the formal quantization", formalInverse);
    for (const Rat& hbar : hbars) {
        const std::string tag = " at hbar = " + toString(hbar);
        bool morphism = true, bound = true, inverse = true, resymbol = true;
        for (const auto& a : gens)
            for (const auto& b : gens) {
                GradedSymbol ab = q.star(a, b, hbar);
                Mat composed = q.quantize(a, hbar) * q.quantize(b, hbar);
                morphism = morphism && q.quantize(ab, hbar) == composed;
                GradedSymbol diff = ab - q.product(a, b);
                bound = bound && diff.maxDegree() <= a.maxDegree() + b.maxDegree() - 1;
                if (sgn(hbar) == 0) bound = bound && diff.isZero();
                if (sgn(hbar) != 0) resymbol = resymbol && q.totalSymbol(composed, hbar) == ab;
            }
        r.add("deformed quantization is multiplicative" + tag, morphism);
        r.add("star minus symbol product is lower order" + tag, bound);
        if (sgn(hbar) != 0) {
            for (const auto& a : gens) {
                inverse = inverse && q.totalSymbol(q.quantize(a, hbar), hbar) == a;
                Mat op = q.quantize(a);
                inverse = inverse && q.quantize(q.totalSymbol(op, hbar), hbar) == op;
            }
            r.add("deformed total symbol inverts the deformed quantization" + tag, inverse);
            r.add("star product through operator composition" + tag, resymbol);
        }
    }
    bool q1 = true, q0 = true;
    for (const auto& a : gens) {
        q1 = q1 && q.quantize(a, 1) == q.quantize(a);
        q0 = q0 && q.quantize(a, 0) == q.quantize(0, a.at(0, q.target().dim, q.source().dim));
    }
    r.add("q_1 is the quantization", q1);
    r.add("q_0 is the degree-0 projection", q0);
    return r;
}

}  // namespace ncjet
