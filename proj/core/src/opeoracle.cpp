#include "qgl/opeoracle.hpp"

#include <sstream>
#include <stdexcept>

namespace qgl {

Series series_mul(const Series& a, const Series& b, long k) {
    Series r(static_cast<size_t>(k) + 1);
    for (long m = 0; m <= k; ++m) {
        QScalar s;
        for (long j = 0; j <= m; ++j) {
            if (j >= static_cast<long>(a.size())) break;
            long i = m - j;
            if (i >= static_cast<long>(b.size())) continue;
            s = s + a[static_cast<size_t>(j)] * b[static_cast<size_t>(i)];
        }
        r[static_cast<size_t>(m)] = s;
    }
    return r;
}

Series series_exp(const Series& logc, long k) {
    if (!logc.empty() && !logc[0].zero())
        throw std::invalid_argument("series_exp: nonzero constant term");
    Series e(static_cast<size_t>(k) + 1);
    e[0] = QScalar(1);
    // m e_m = sum_{j=1}^{m} j g_j e_{m-j}, from differentiating exp
    for (long m = 1; m <= k; ++m) {
        QScalar s;
        for (long j = 1; j <= m; ++j) {
            if (j >= static_cast<long>(logc.size())) break;
            s = s + QScalar(Rat(j)) * logc[static_cast<size_t>(j)] *
                        e[static_cast<size_t>(m - j)];
        }
        e[static_cast<size_t>(m)] = s / QScalar(Rat(m));
    }
    return e;
}

Series binom_factor(long tu, const Rat& g, long k) {
    Series r(static_cast<size_t>(k) + 1);
    for (long m = 0; m <= k; ++m) {
        Rat c = rat_binom(g, m);
        if (m % 2 != 0) c = -c;
        r[static_cast<size_t>(m)] = QScalar(c) * upow(tu * m);
    }
    return r;
}

namespace {

const char* kind_name(BlockSpec::Kind k) {
    switch (k) {
        case BlockSpec::H: return "H";
        case BlockSpec::Hstar: return "Hstar";
        case BlockSpec::B1: return "B1";
        case BlockSpec::B2N: return "B2N";
        case BlockSpec::C: return "c";
    }
    return "?";
}

bool needs_index(BlockSpec::Kind k) {
    return k == BlockSpec::H || k == BlockSpec::Hstar || k == BlockSpec::C;
}

} // namespace

BlockSpec parse_block_spec(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);

    BlockSpec b;
    if (parts[0] == "H") b.kind = BlockSpec::H;
    else if (parts[0] == "Hstar") b.kind = BlockSpec::Hstar;
    else if (parts[0] == "B1") b.kind = BlockSpec::B1;
    else if (parts[0] == "B2N") b.kind = BlockSpec::B2N;
    else if (parts[0] == "c") b.kind = BlockSpec::C;
    else throw std::invalid_argument("block spec: unknown kind '" + parts[0] + "'");

    size_t at = 1;
    if (needs_index(b.kind)) {
        if (at >= parts.size() || parts[at].find('=') != std::string::npos)
            throw std::invalid_argument("block spec: kind " + parts[0] +
                                        " needs an index");
        b.index = static_cast<int>(to_long(parse_rat(parts[at])));
        ++at;
    }
    for (; at < parts.size(); ++at) {
        auto eq = parts[at].find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("block spec: expected key=value, got '" +
                                        parts[at] + "'");
        std::string key = parts[at].substr(0, eq);
        Rat val = parse_rat(parts[at].substr(eq + 1));
        if (key == "beta") b.beta = val;
        else if (key == "kappa") b.kappa = val;
        else if (key == "sign") {
            if (val != Rat(1) && val != Rat(-1))
                throw std::invalid_argument("block spec: sign must be 1 or -1");
            b.sign = static_cast<int>(to_long(val));
        } else {
            throw std::invalid_argument("block spec: unknown key '" + key + "'");
        }
    }
    return b;
}

std::string block_spec_str(const BlockSpec& b) {
    std::ostringstream os;
    os << kind_name(b.kind);
    if (needs_index(b.kind)) os << ":" << b.index;
    if (b.beta != Rat(0)) os << ":beta=" << rat_str(b.beta);
    if (b.kappa != Rat(0) && b.kind != BlockSpec::C)
        os << ":kappa=" << rat_str(b.kappa);
    if (b.sign != 1) os << ":sign=-1";
    return os.str();
}

ExpAtom block_atom(const Cartan& C, const BlockSpec& b) {
    ExpAtom a(3 * C.N());
    switch (b.kind) {
        case BlockSpec::H:
            if (b.index < 1 || b.index > C.size())
                throw std::invalid_argument("block spec: H index out of range");
            add_H(a, C, b.index, b.beta, b.kappa, b.sign);
            break;
        case BlockSpec::Hstar:
            add_Hstar(a, C, b.index, b.beta, b.kappa, b.sign);
            break;
        case BlockSpec::B1:
            add_B1(a, C, b.beta, b.kappa, b.sign);
            break;
        case BlockSpec::B2N:
            add_B2N(a, C, b.beta, b.kappa, b.sign);
            break;
        case BlockSpec::C:
            if (b.index < 1 || b.index > C.N())
                throw std::invalid_argument("block spec: c index out of range");
            add_c(a, C, b.index, b.beta, b.sign);
            break;
    }
    return a;
}

namespace {

// Split an integer exponent on (1 - q^{e0} x) into plain binomial factors.
// Magnitude two resolves into neighbouring q-shifts, matching the identity
// [2n] = (q^n + q^{-n})[n] inside the contraction sum.
void push_split(std::vector<std::pair<long, Rat>>& out, long a, const Rat& e0) {
    if (a == 0) return;
    long ue0 = to_long(Rat(2) * e0); // factor exponents live on the u lattice
    if (a == 1 || a == -1) {
        out.emplace_back(ue0, Rat(a));
    } else if (a == 2 || a == -2) {
        out.emplace_back(ue0 + 2, Rat(a / 2));
        out.emplace_back(ue0 - 2, Rat(a / 2));
    } else {
        throw std::invalid_argument("two_point_form: exponent magnitude above two");
    }
}

} // namespace

TwoPointForm two_point_form(const Cartan& C, const BlockSpec& L, const BlockSpec& R) {
    const int tn = C.size();
    TwoPointForm f;
    Rat e0 = L.kappa + R.kappa + R.beta - L.beta;
    if (L.kind == BlockSpec::C || R.kind == BlockSpec::C)
        e0 = R.beta - L.beta; // c blocks carry no damping
    Rat P;      // zero-mode pairing, the z exponent before signs
    long A = 0; // tabulated factor exponent
    bool covered = false;

    using K = BlockSpec::Kind;
    const K kl = L.kind, kr = R.kind;
    if (kl == K::H && kr == K::H) {
        if (L.index <= tn - 1 && R.index <= tn - 1) {
            P = C.a(L.index, R.index);
            A = to_long(P);
            covered = true;
        }
    } else if ((kl == K::H && kr == K::Hstar) || (kl == K::Hstar && kr == K::H)) {
        P = Rat(L.index == R.index ? 1 : 0);
        A = to_long(P);
        covered = true;
    } else if (kl == K::Hstar && kr == K::Hstar) {
        if (L.index == 1 && R.index == tn - 1) {
            P = Rat(0);
            covered = true;
        }
    } else if ((kl == K::B2N || kl == K::B1) && kr == K::H) {
        P = Rat(0);
        covered = true;
    } else if ((kl == K::B2N && kr == K::B2N) || (kl == K::B1 && kr == K::B1)) {
        P = Rat(0);
        covered = true;
    } else if (kl == K::B2N && kr == K::Hstar) {
        if (R.index % 2 == 1) {
            P = Rat(1, 2 * C.N());
            A = 1;
        }
        covered = true;
    } else if (kl == K::C && kr == K::C) {
        P = Rat(L.index == R.index ? 1 : 0);
        A = to_long(P);
        covered = true;
    }

    if (!covered) return f;
    f.covered = true;
    long s = L.sign * R.sign;
    f.zpow = Rat(s) * P;
    f.qpow = L.beta * Rat(s) * P;
    push_split(f.factors, s * A, e0);
    return f;
}

Series form_series(const TwoPointForm& f, long k) {
    Series r(static_cast<size_t>(k) + 1);
    r[0] = QScalar(1);
    for (const auto& [tu, g] : f.factors) r = series_mul(r, binom_factor(tu, g, k), k);
    return r;
}

Series contraction_series(const Cartan& C, const ExpAtom& L, const ExpAtom& R, long k) {
    Series logc(static_cast<size_t>(k) + 1);
    for (long n = 1; n <= k; ++n)
        logc[static_cast<size_t>(n)] = pair_coeff(C, L, R, n);
    return series_exp(logc, k);
}

TwoPointEngine two_point_engine(const Cartan& C, const BlockSpec& L,
                                const BlockSpec& R, long order) {
    ExpAtom aL = block_atom(C, L);
    ExpAtom aR = block_atom(C, R);
    TwoPointEngine e;
    e.zpow = cross_zpow(aL, aR);
    e.qpow = cross_qpow(aL, aR);
    e.phase = cross_phase(aL, aR);
    e.series = contraction_series(C, aL, aR, order);
    return e;
}

namespace {

struct SweepGrid {
    std::vector<Rat> kappas{Rat(-1, 2), Rat(0), Rat(1, 2)};
    std::vector<std::pair<int, int>> signs{{1, 1}, {-1, 1}, {1, -1}};
    std::vector<std::pair<Rat, Rat>> betas{{Rat(0), Rat(0)}, {Rat(2), Rat(0)},
                                           {Rat(0), Rat(1)}};
};

// Runs the closed-form / engine comparison for one ordered kind pair over
// the full parameter grid, accumulating counts and the first failing case.
struct PairSweeper {
    const Cartan& C;
    long order;
    SweepGrid grid;
    CheckResult& c;
    bool ok = true;

    void run(BlockSpec L, BlockSpec R) {
        c.stats["pairs"] += 1;
        for (const Rat& k1 : grid.kappas)
            for (const Rat& k2 : grid.kappas)
                for (auto [s1, s2] : grid.signs)
                    for (const auto& [b1, b2] : grid.betas) {
                        L.kappa = k1;
                        L.sign = s1;
                        L.beta = b1;
                        R.kappa = k2;
                        R.sign = s2;
                        R.beta = b2;
                        one(L, R);
                    }
    }

    void one(const BlockSpec& L, const BlockSpec& R) {
        TwoPointForm f = two_point_form(C, L, R);
        if (!f.covered)
            throw std::logic_error("two-point sweep hit an untabulated pair");
        TwoPointEngine e = two_point_engine(C, L, R, order);
        c.stats["expansions"] += 1;
        c.stats["coefficients"] += order + 1;
        bool good = f.zpow == e.zpow && f.qpow == e.qpow && e.phase == Rat(0);
        Series fs = form_series(f, order);
        for (long m = 0; good && m <= order; ++m)
            good = (fs[static_cast<size_t>(m)] == e.series[static_cast<size_t>(m)]);
        if (good || !ok) return;
        ok = false;
        std::ostringstream os;
        os << block_spec_str(L) << " | " << block_spec_str(R) << ": closed z^"
           << rat_str(f.zpow) << " q^" << rat_str(f.qpow) << ", engine z^"
           << rat_str(e.zpow) << " q^" << rat_str(e.qpow);
        for (long m = 0; m <= order; ++m) {
            const QScalar& a = fs[static_cast<size_t>(m)];
            const QScalar& b = e.series[static_cast<size_t>(m)];
            if (!(a == b)) {
                os << ", x^" << m << " closed " << a.str() << " engine " << b.str();
                break;
            }
        }
        c.detail = os.str();
    }
};

BlockSpec mk(BlockSpec::Kind k, int idx = 1) {
    BlockSpec b;
    b.kind = k;
    b.index = idx;
    return b;
}

} // namespace

Report verify_two_point(int N, long order) {
    if (N < 1 || order < 1)
        throw std::invalid_argument("verify_two_point: rank and order must be positive");
    Report rep("oracle two-point");
    Cartan C(N);
    const int xr = C.size() - 1;
    using K = BlockSpec::Kind;

    {
        CheckResult c{"ladder blocks contract through the Cartan pairing", false, "", {}};
        PairSweeper sw{C, order, {}, c};
        for (int i = 1; i <= xr; ++i)
            for (int j = 1; j <= xr; ++j) sw.run(mk(K::H, i), mk(K::H, j));
        c.pass = sw.ok;
        rep.add(std::move(c));
    }
    {
        CheckResult c{"ladder against dual blocks is diagonal", false, "", {}};
        PairSweeper sw{C, order, {}, c};
        for (int i = 1; i <= xr; ++i)
            for (int j = 1; j <= xr; ++j) {
                sw.run(mk(K::H, i), mk(K::Hstar, j));
                sw.run(mk(K::Hstar, i), mk(K::H, j));
            }
        c.pass = sw.ok;
        rep.add(std::move(c));
    }
    {
        CheckResult c{"extreme dual blocks do not see each other", false, "", {}};
        PairSweeper sw{C, order, {}, c};
        sw.run(mk(K::Hstar, 1), mk(K::Hstar, xr));
        c.pass = sw.ok;
        rep.add(std::move(c));
    }
    {
        CheckResult c{"auxiliary blocks pass the ladder blocks freely", false, "", {}};
        PairSweeper sw{C, order, {}, c};
        for (int i = 1; i <= xr; ++i) {
            sw.run(mk(K::B2N), mk(K::H, i));
            sw.run(mk(K::B1), mk(K::H, i));
        }
        c.pass = sw.ok;
        rep.add(std::move(c));
    }
    {
        CheckResult c{"auxiliary blocks are mutually transparent", false, "", {}};
        PairSweeper sw{C, order, {}, c};
        sw.run(mk(K::B2N), mk(K::B2N));
        sw.run(mk(K::B1), mk(K::B1));
        c.pass = sw.ok;
        rep.add(std::move(c));
    }
    {
        CheckResult c{"the top auxiliary block pairs with odd dual blocks only", false,
                      "", {}};
        PairSweeper sw{C, order, {}, c};
        for (int j = 1; j <= xr; ++j) sw.run(mk(K::B2N), mk(K::Hstar, j));
        c.pass = sw.ok;
        rep.add(std::move(c));
    }
    {
        CheckResult c{"ghost blocks contract within their own species", false, "", {}};
        PairSweeper sw{C, order, {}, c};
        for (int l = 1; l <= N; ++l)
            for (int lp = 1; lp <= N; ++lp) sw.run(mk(K::C, l), mk(K::C, lp));
        c.pass = sw.ok;
        rep.add(std::move(c));
    }
    return rep;
}

} // namespace qgl
