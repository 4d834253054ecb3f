/*
   Copyright 2026 The qdesign Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "qdesign/km.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qdesign {

// ---------------------------------------------------------------------------
// Groups

MatGF ProjectiveGroup::normalize(const MatGF& m) {
    const auto& f = *m.field();
    MatGF out = m;
    const auto& d = m.data();
    auto it = std::find_if(d.begin(), d.end(), [](Element x) { return x != 0; });
    if (it == d.end()) throw Error("zero matrix is not a group element");
    const Element s = f.inv(*it);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.set(i, j, f.mul(s, m.at(i, j)));
    return out;
}

ProjectiveGroup::ProjectiveGroup(std::vector<MatGF> generators) : generators_(std::move(generators)) {
    if (generators_.empty()) throw Error("a group needs at least one generator");
    field_ = generators_[0].field();
    v_ = generators_[0].rows();
    for (auto& g : generators_) {
        if (g.rows() != v_ || g.cols() != v_) throw Error("generators must all be " + std::to_string(v_) + "x" + std::to_string(v_));
        if (!g.field()->same_as(*field_)) throw Error("generators live over different fields");
        if (g.rank() != v_) throw Error("singular generator:\n" + g.to_string());
        g = normalize(g);
    }
    MatGF id = MatGF::identity(field_, v_);
    elements_.push_back(id);
    lookup_.emplace(id.data(), 0);
    for (std::size_t head = 0; head < elements_.size(); ++head) {
        for (const auto& g : generators_) {
            MatGF h = normalize(elements_[head] * g);
            if (lookup_.count(h.data())) continue;
            lookup_.emplace(h.data(), elements_.size());
            elements_.push_back(std::move(h));
        }
    }
}

bool ProjectiveGroup::contains(const MatGF& m) const { return lookup_.count(normalize(m).data()) > 0; }

Subspace act(const Subspace& s, const MatGF& m) { return apply(s, m); }

std::vector<MatGF> parse_word_spec(const std::string& spec, const MatGF& sigma, const MatGF& phi) {
    std::vector<MatGF> out;
    std::stringstream ss(spec);
    std::string word;
    while (std::getline(ss, word, ',')) {
        word.erase(std::remove_if(word.begin(), word.end(), [](unsigned char c) { return std::isspace(c) || c == '*'; }),
                   word.end());
        if (word.empty()) throw Error("empty word in group spec '" + spec + "'");
        MatGF acc = MatGF::identity(sigma.field(), sigma.rows());
        std::size_t i = 0;
        while (i < word.size()) {
            const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(word[i])));
            if (c != 's' && c != 'f')
                throw Error("unexpected '" + std::string(1, word[i]) + "' in group spec '" + spec + "' (letters are s and f)");
            ++i;
            std::uint64_t e = 1;
            if (i < word.size() && word[i] == '^') {
                ++i;
                std::size_t j = i;
                while (j < word.size() && std::isdigit(static_cast<unsigned char>(word[j]))) ++j;
                if (j == i) throw Error("missing exponent in group spec '" + spec + "'");
                e = std::stoull(word.substr(i, j - i));
                i = j;
            }
            acc = acc * (c == 's' ? sigma : phi).pow(e);
        }
        out.push_back(std::move(acc));
    }
    if (out.empty()) throw Error("empty group spec");
    return out;
}

// ---------------------------------------------------------------------------
// Orbits

namespace {

// Maps packed canonical keys through x -> x * g.
class KeyActor {
   public:
    KeyActor(const FieldPtr& field, int v, int d) : f_(*field), v_(v), d_(d), buf_(d * v), out_(d * v) {}

    PackedKey operator()(PackedKey key, const MatGF& g) {
        const unsigned q = f_.q();
        unpack_canonical(key, d_, v_, q, buf_.data());
        std::fill(out_.begin(), out_.end(), 0);
        for (int r = 0; r < d_; ++r) {
            const Element* x = buf_.data() + r * v_;
            Element* o = out_.data() + r * v_;
            for (int l = 0; l < v_; ++l) {
                if (x[l] == 0) continue;
                const Element* gr = g.row(l);
                for (int c = 0; c < v_; ++c) o[c] = f_.add(o[c], f_.mul(x[l], gr[c]));
            }
        }
        detail::rref(f_, out_.data(), d_, v_);
        return pack_canonical(out_.data(), d_, v_, q);
    }

   private:
    const GaloisField& f_;
    int v_, d_;
    std::vector<Element> buf_, out_;
};

constexpr std::uint32_t kUnvisited = 0xffffffffu;

}  // namespace

OrbitTable::OrbitTable(const ProjectiveGroup& group, int d)
    : index_(group.field(), group.v(), d), orbit_(index_.size(), kUnvisited) {
    KeyActor act(group.field(), group.v(), d);
    std::vector<std::size_t> queue;
    // Seeds in increasing key order, so each seed is the least member of its orbit.
    for (std::size_t seed = 0; seed < index_.size(); ++seed) {
        if (orbit_[seed] != kUnvisited) continue;
        const auto id = static_cast<std::uint32_t>(reps_.size());
        reps_.push_back(seed);
        orbit_[seed] = id;
        queue.assign(1, seed);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const PackedKey key = index_.key_at(queue[head]);
            for (const auto& g : group.generators()) {
                const auto pos = index_.find(act(key, g));
                if (pos < 0) throw Error("group image is not a canonical subspace");
                if (orbit_[pos] != kUnvisited) continue;
                orbit_[pos] = id;
                queue.push_back(static_cast<std::size_t>(pos));
            }
        }
        sizes_.push_back(queue.size());
        if (group.order() % queue.size() != 0)
            throw Error("orbit size " + std::to_string(queue.size()) + " does not divide the group order " +
                        std::to_string(group.order()));
    }
}

std::size_t OrbitTable::orbit_of(const Subspace& s) const {
    if (s.v() != v() || s.dim() != d()) throw Error("subspace has the wrong dimensions for this orbit table");
    const auto pos = index_.find(s);
    if (pos < 0) throw Error("subspace not found in the orbit table");
    return orbit_[pos];
}

std::map<std::uint64_t, std::size_t> OrbitTable::profile() const {
    std::map<std::uint64_t, std::size_t> out;
    for (auto s : sizes_) ++out[s];
    return out;
}

std::string OrbitTable::profile_string() const {
    std::string out;
    for (const auto& [size, mult] : profile()) {
        if (!out.empty()) out += ' ';
        out += std::to_string(size) + "^" + std::to_string(mult);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Kramer-Mesner matrix

KMInstance::KMInstance(const ProjectiveGroup& group, int t, int k, std::uint64_t lambda)
    : t_(t), k_(k), lambda_(lambda), group_order_(group.order()), torbits_(group, t), korbits_(group, k) {
    if (t < 0 || t > k || k > group.v()) throw Error("need 0 <= t <= k <= v");
    const auto& f = *group.field();
    const int v = group.v();
    const std::size_t tau = rows(), kappa = cols();
    const auto patterns = coefficient_patterns(f, k, t);
    const std::size_t npat = t == 0 ? 1 : patterns.size() / (static_cast<size_t>(t) * k);
    std::vector<std::uint64_t> m(tau);
    std::vector<Element> out(static_cast<size_t>(t) * v);
    a_.assign(tau * kappa, 0);
    for (std::size_t j = 0; j < kappa; ++j) {
        std::fill(m.begin(), m.end(), 0);
        const Subspace rep = korbits_.representative(j);
        for (std::size_t p = 0; p < npat; ++p) {
            combine_rows(f, patterns.data() + p * t * k, t, k, rep.entries().data(), v, out.data());
            const auto pos = torbits_.index().find(pack_canonical(out.data(), t, v, f.q()));
            if (pos < 0) throw Error("internal: t-subspace of a block is not canonical");
            ++m[torbits_.orbit_of_position(pos)];
        }
        // Double counting pairs (T, K) with T in T_i, K in K_j, T <= K.
        for (std::size_t i = 0; i < tau; ++i) {
            const std::uint64_t num = korbits_.size(j) * m[i];
            if (num % torbits_.size(i) != 0)
                throw Error("internal: orbit incidence count is not integral at (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
            a_[i * kappa + j] = static_cast<std::uint32_t>(num / torbits_.size(i));
        }
    }
    const BigCount row_sum = gaussian_binomial(v - t, k - t, f.q());
    for (std::size_t i = 0; i < tau; ++i) {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < kappa; ++j) s += a_[i * kappa + j];
        if (BigCount(s) != row_sum)
            throw Error("row identity fails at row " + std::to_string(i) + ": " + std::to_string(s) + " != " + row_sum.str());
    }
    const BigCount kt = gaussian_binomial(k, t, f.q());
    for (std::size_t j = 0; j < kappa; ++j) {
        BigCount s = 0;
        for (std::size_t i = 0; i < tau; ++i) s += BigCount(torbits_.size(i)) * a_[i * kappa + j];
        if (s != BigCount(korbits_.size(j)) * kt)
            throw Error("column identity fails at column " + std::to_string(j));
    }
}

// ---------------------------------------------------------------------------
// Solver

ExactSystem ExactSystem::from_instance(const KMInstance& inst) {
    ExactSystem sys;
    sys.rows = inst.rows();
    sys.cols = inst.cols();
    sys.a = inst.matrix();
    sys.b.assign(sys.rows, inst.lambda());
    sys.order.resize(sys.cols);
    std::iota(sys.order.begin(), sys.order.end(), 0);
    const auto& sizes = inst.k_orbits().sizes();
    std::stable_sort(sys.order.begin(), sys.order.end(),
                     [&](std::size_t x, std::size_t y) { return sizes[x] > sizes[y]; });
    return sys;
}

std::string to_string(SolverStrategy s) { return s == SolverStrategy::Lattice ? "lattice" : "backtrack"; }

SolverStrategy parse_solver_strategy(const std::string& name) {
    if (name == "backtrack") return SolverStrategy::Backtrack;
    if (name == "lattice") return SolverStrategy::Lattice;
    throw Error("unknown solver strategy '" + name + "' (expected backtrack or lattice)");
}

namespace {

using Callback = std::function<bool(const std::vector<std::size_t>&)>;

struct Entry {
    std::uint32_t row;
    std::int64_t value;
};

class Backtrack {
   public:
    Backtrack(const ExactSystem& sys, SolveMode mode, std::uint64_t budget, const Callback& cb, SolveResult& res)
        : mode_(mode), budget_(budget), cb_(cb), res_(res) {
        order_ = sys.order;
        if (order_.empty()) {
            order_.resize(sys.cols);
            std::iota(order_.begin(), order_.end(), 0);
        }
        if (order_.size() != sys.cols) throw Error("column order has the wrong length");
        deficit_.resize(sys.rows);
        potential_.assign(sys.rows, 0);
        for (std::size_t i = 0; i < sys.rows; ++i) deficit_[i] = static_cast<std::int64_t>(sys.b[i]);
        cols_.resize(order_.size());
        for (std::size_t p = 0; p < order_.size(); ++p) {
            const std::size_t j = order_[p];
            if (j >= sys.cols) throw Error("column order names a missing column");
            for (std::size_t i = 0; i < sys.rows; ++i) {
                const auto x = sys.a[i * sys.cols + j];
                if (x == 0) continue;
                cols_[p].push_back({static_cast<std::uint32_t>(i), x});
                potential_[i] += x;
            }
        }
    }

    void run() {
        for (std::size_t i = 0; i < deficit_.size(); ++i)
            if (deficit_[i] < 0 || deficit_[i] > potential_[i]) return;
        dfs(0);
    }

   private:
    // Returns false to abort the whole search.
    bool dfs(std::size_t p) {
        if (budget_ && res_.nodes >= budget_) {
            res_.exhausted = true;
            return false;
        }
        ++res_.nodes;
        if (p == order_.size()) return record();
        const auto& col = cols_[p];
        bool ok = true;
        for (const auto& e : col) {
            deficit_[e.row] -= e.value;
            potential_[e.row] -= e.value;
            if (deficit_[e.row] < 0) ok = false;
        }
        bool go = true;
        if (ok) {
            chosen_.push_back(order_[p]);
            go = dfs(p + 1);
            chosen_.pop_back();
        }
        for (const auto& e : col) deficit_[e.row] += e.value;
        if (!go) {
            for (const auto& e : col) potential_[e.row] += e.value;
            return false;
        }
        ok = true;
        for (const auto& e : col)
            if (potential_[e.row] < deficit_[e.row]) ok = false;
        if (ok) go = dfs(p + 1);
        for (const auto& e : col) potential_[e.row] += e.value;
        return go;
    }

    bool record() {
        ++res_.count;
        std::vector<std::size_t> sol = chosen_;
        std::sort(sol.begin(), sol.end());
        if (mode_ != SolveMode::Count) res_.solutions.push_back(sol);
        if (cb_ && !cb_(sol)) return false;
        return mode_ != SolveMode::First;
    }

    SolveMode mode_;
    std::uint64_t budget_;
    const Callback& cb_;
    SolveResult& res_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<Entry>> cols_;
    std::vector<std::int64_t> deficit_, potential_;
    std::vector<std::size_t> chosen_;
};

using Real = long double;
using IntVec = std::vector<std::int64_t>;

// Rank over the rationals, computed modulo a large prime.
std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> m) {
    constexpr std::uint64_t p = 2305843009213693951ull;  // 2^61 - 1
    auto red = [](std::int64_t x) {
        const auto r = static_cast<std::int64_t>(x % static_cast<std::int64_t>(p));
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
    };
    auto mulmod = [](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        for (; e; e >>= 1, a = mulmod(a, a))
            if (e & 1) r = mulmod(r, a);
        return r;
    };
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = red(m[i][j]);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        const std::uint64_t inv = powmod(a[rank][c], p - 2);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            const std::uint64_t f = mulmod(a[i][c], inv);
            for (std::size_t j = c; j < cols; ++j) a[i][j] = (a[i][j] + p - mulmod(f, a[rank][j])) % p;
        }
        ++rank;
    }
    return rank;
}

// Integer lattice basis (rows) with floating Gram-Schmidt data.
class Lattice {
   public:
    explicit Lattice(std::vector<IntVec> basis) : b_(std::move(basis)) {}

    std::size_t size() const { return b_.size(); }
    const IntVec& vec(std::size_t i) const { return b_[i]; }
    Real mu(std::size_t i, std::size_t j) const { return mu_[i][j]; }
    Real norm2(std::size_t i) const { return B_[i]; }
    const std::vector<Real>& star(std::size_t i) const { return star_[i]; }

    void gram_schmidt() {
        const std::size_t n = b_.size(), dim = n ? b_[0].size() : 0;
        mu_.assign(n, std::vector<Real>(n, 0));
        B_.assign(n, 0);
        star_.assign(n, std::vector<Real>(dim, 0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t t = 0; t < dim; ++t) star_[i][t] = static_cast<Real>(b_[i][t]);
            for (std::size_t j = 0; j < i; ++j) {
                Real s = 0;
                for (std::size_t t = 0; t < dim; ++t) s += static_cast<Real>(b_[i][t]) * star_[j][t];
                mu_[i][j] = s / B_[j];
                for (std::size_t t = 0; t < dim; ++t) star_[i][t] -= mu_[i][j] * star_[j][t];
            }
            Real s = 0;
            for (std::size_t t = 0; t < dim; ++t) s += star_[i][t] * star_[i][t];
            if (s <= 0) throw Error("lattice basis is linearly dependent");
            B_[i] = s;
        }
    }

    // LLL reduction with parameter delta; the basis must be linearly independent.
    void lll(Real delta = 0.99L) {
        gram_schmidt();
        const std::size_t n = b_.size();
        std::size_t k = 1;
        while (k < n) {
            reduce(k, k - 1);
            if (B_[k] < (delta - mu_[k][k - 1] * mu_[k][k - 1]) * B_[k - 1]) {
                swap(k);
                k = std::max<std::size_t>(1, k - 1);
            } else {
                for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
                ++k;
            }
        }
        gram_schmidt();
    }

   private:
    void reduce(std::size_t k, std::size_t l) {
        if (std::fabs(mu_[k][l]) <= 0.5L) return;
        const auto r = static_cast<std::int64_t>(std::llround(mu_[k][l]));
        for (std::size_t t = 0; t < b_[k].size(); ++t) b_[k][t] -= r * b_[l][t];
        for (std::size_t j = 0; j < l; ++j) mu_[k][j] -= static_cast<Real>(r) * mu_[l][j];
        mu_[k][l] -= static_cast<Real>(r);
    }

    void swap(std::size_t k) {
        std::swap(b_[k], b_[k - 1]);
        for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu_[k][j], mu_[k - 1][j]);
        const Real m = mu_[k][k - 1];
        const Real bb = B_[k] + m * m * B_[k - 1];
        mu_[k][k - 1] = m * B_[k - 1] / bb;
        B_[k] = B_[k - 1] * B_[k] / bb;
        B_[k - 1] = bb;
        for (std::size_t i = k + 1; i < b_.size(); ++i) {
            const Real t = mu_[i][k];
            mu_[i][k] = mu_[i][k - 1] - m * t;
            mu_[i][k - 1] = t + mu_[k][k - 1] * mu_[i][k];
        }
    }

    std::vector<IntVec> b_;
    std::vector<std::vector<Real>> mu_;
    std::vector<Real> B_;
    std::vector<std::vector<Real>> star_;
};

/*
 * Solutions x of A x = b correspond to the vectors (2x - 1, 1) in {-1, 1}^(n+1) of the lattice
 * {(2z - s 1, s) : z in Z^n, s in Z, A z = s b}. The lattice is found by LLL-reducing a basis
 * with the equations scaled up, then searched exhaustively for +-1 vectors with Schnorr-Euchner
 * style enumeration, bounded by the Euclidean norm n + 1 and, per level, by the 1-norm of the
 * Gram-Schmidt vector.
 */
class LatticeSearch {
   public:
    LatticeSearch(const ExactSystem& sys, SolveMode mode, std::uint64_t budget, const Callback& cb, SolveResult& res)
        : sys_(sys), mode_(mode), budget_(budget), cb_(cb), res_(res) {}

    void run() {
        const std::size_t m = sys_.rows, n = sys_.cols;
        std::vector<std::vector<std::int64_t>> aug(m, std::vector<std::int64_t>(n + 1));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug[i][j] = sys_.a[i * n + j];
            aug[i][n] = static_cast<std::int64_t>(sys_.b[i]);
        }
        const std::size_t want = n + 1 - rank_mod_p(aug);
        std::vector<IntVec> kernel;
        for (std::int64_t scale = std::int64_t{1} << 12;; scale <<= 4) {
            if (scale > (std::int64_t{1} << 36)) throw Error("lattice reduction did not isolate the solution lattice");
            std::vector<IntVec> basis(n + 1, IntVec(m + n + 1, 0));
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t i = 0; i < m; ++i) basis[j][i] = scale * sys_.a[i * n + j];
                basis[j][m + j] = 2;
            }
            for (std::size_t i = 0; i < m; ++i) basis[n][i] = -scale * static_cast<std::int64_t>(sys_.b[i]);
            for (std::size_t j = 0; j < n; ++j) basis[n][m + j] = -1;
            basis[n][m + n] = 1;
            Lattice lat(std::move(basis));
            lat.lll();
            kernel.clear();
            for (std::size_t i = 0; i < lat.size(); ++i) {
                const auto& v = lat.vec(i);
                if (std::any_of(v.begin(), v.begin() + m, [](std::int64_t x) { return x != 0; })) break;
                kernel.emplace_back(v.begin() + m, v.end());
            }
            if (kernel.size() == want) break;
        }
        if (kernel.empty()) return;
        Lattice lat(std::move(kernel));
        lat.lll();
        enumerate(lat);
    }

   private:
    void enumerate(const Lattice& lat) {
        lat_ = &lat;
        d_ = lat.size();
        dim_ = lat.vec(0).size();
        radius2_ = static_cast<Real>(dim_) + 1e-6L;
        holder_.resize(d_);
        for (std::size_t k = 0; k < d_; ++k) {
            Real s = 0;
            for (Real x : lat.star(k)) s += std::fabs(x);
            holder_[k] = s / lat.norm2(k) + 1e-9L;
        }
        u_.assign(d_, 0);
        partial_.assign(d_ + 1, 0);
        w_.assign(d_ + 1, IntVec(dim_, 0));
        level(d_ - 1, true);
    }

    // Returns false to abort the whole search.
    bool level(std::size_t k, bool leading_zero) {
        Real center = 0;
        for (std::size_t j = k + 1; j < d_; ++j) center -= static_cast<Real>(u_[j]) * lat_->mu(j, k);
        const Real room = (radius2_ - partial_[k + 1]) / lat_->norm2(k);
        if (room < 0) return true;
        const Real rad = std::min(std::sqrt(room), holder_[k]);
        auto lo = static_cast<std::int64_t>(std::ceil(center - rad - 1e-9L));
        const auto hi = static_cast<std::int64_t>(std::floor(center + rad + 1e-9L));
        // v and -v give the same solution; keep the one whose leading coefficient is positive.
        if (leading_zero) lo = std::max<std::int64_t>(lo, 0);
        for (std::int64_t x = lo; x <= hi; ++x) {
            if (budget_ && res_.nodes >= budget_) {
                res_.exhausted = true;
                return false;
            }
            ++res_.nodes;
            u_[k] = x;
            const Real y = static_cast<Real>(x) - center;
            partial_[k] = partial_[k + 1] + y * y * lat_->norm2(k);
            if (partial_[k] > radius2_) continue;
            const auto& bk = lat_->vec(k);
            for (std::size_t t = 0; t < dim_; ++t) w_[k][t] = w_[k + 1][t] + x * bk[t];
            bool go = k == 0 ? leaf() : level(k - 1, leading_zero && x == 0);
            if (!go) {
                u_[k] = 0;
                return false;
            }
        }
        u_[k] = 0;
        return true;
    }

    bool leaf() {
        const IntVec& v = w_[0];
        for (auto x : v)
            if (x != 1 && x != -1) return true;
        const std::int64_t s = v.back();
        std::vector<std::size_t> sol;
        for (std::size_t j = 0; j + 1 < dim_; ++j)
            if (v[j] == s) sol.push_back(j);
        ++res_.count;
        if (mode_ != SolveMode::Count) res_.solutions.push_back(sol);
        if (cb_ && !cb_(sol)) return false;
        return mode_ != SolveMode::First;
    }

    const ExactSystem& sys_;
    SolveMode mode_;
    std::uint64_t budget_;
    const Callback& cb_;
    SolveResult& res_;
    const Lattice* lat_ = nullptr;
    std::size_t d_ = 0, dim_ = 0;
    Real radius2_ = 0;
    std::vector<Real> holder_, partial_;
    std::vector<std::int64_t> u_;
    std::vector<IntVec> w_;
};

}  // namespace

SolveResult solve_exact(const ExactSystem& sys, SolveMode mode, std::uint64_t budget,
                        const std::function<bool(const std::vector<std::size_t>&)>& on_solution) {
    if (sys.a.size() != sys.rows * sys.cols || sys.b.size() != sys.rows) throw Error("malformed exact system");
    SolveResult res;
    if (sys.strategy == SolverStrategy::Lattice)
        LatticeSearch(sys, mode, budget, on_solution, res).run();
    else
        Backtrack(sys, mode, budget, on_solution, res).run();
    if (mode == SolveMode::Enumerate) std::sort(res.solutions.begin(), res.solutions.end());
    return res;
}

SolveResult km_solve(const KMInstance& inst, SolveMode mode, std::uint64_t budget,
                     const std::function<bool(const std::vector<std::size_t>&)>& on_solution,
                     SolverStrategy strategy) {
    auto sys = ExactSystem::from_instance(inst);
    sys.strategy = strategy;
    return solve_exact(sys, mode, budget, on_solution);
}

// ---------------------------------------------------------------------------
// Selections

SelectionReport verify_selection(const KMInstance& inst, const std::vector<std::size_t>& selection) {
    SelectionReport rep;
    std::vector<std::uint8_t> in(inst.cols(), 0);
    for (auto j : selection) {
        if (j >= inst.cols()) throw Error("orbit id " + std::to_string(j) + " out of range");
        if (in[j]) throw Error("orbit id " + std::to_string(j) + " selected twice");
        in[j] = 1;
        rep.blocks += inst.k_orbits().size(j);
    }
    for (std::size_t i = 0; i < inst.rows(); ++i) {
        std::uint64_t s = 0;
        for (auto j : selection) s += inst.a(i, j);
        if (s != inst.lambda()) {
            rep.failing_row = i;
            rep.failing_value = s;
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

SubspaceDesign assemble_design(const KMInstance& inst, const std::vector<std::size_t>& selection) {
    const auto& ko = inst.k_orbits();
    std::vector<std::uint8_t> in(ko.count(), 0);
    for (auto j : selection) {
        if (j >= ko.count()) throw Error("orbit id " + std::to_string(j) + " out of range");
        in[j] = 1;
    }
    std::vector<PackedKey> keys;
    const auto& idx = ko.index();
    for (std::size_t pos = 0; pos < idx.size(); ++pos)
        if (in[ko.orbit_of_position(pos)]) keys.push_back(idx.key_at(pos));
    SubspaceDesign d;
    d.t = inst.t();
    d.lambda = inst.lambda();
    d.blocks = BlockSet(ko.field(), ko.v(), ko.d(), std::move(keys));
    return d;
}

std::vector<std::vector<std::uint64_t>> parse_code_lines(const std::string& text) {
    std::vector<std::vector<std::uint64_t>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::vector<std::uint64_t> codes;
        std::size_t i = 0;
        while (i < line.size()) {
            const unsigned char c = line[i];
            if (std::isspace(c) || c == ',' || c == '(' || c == ')') {
                ++i;
                continue;
            }
            if (!std::isdigit(c))
                throw Error("line " + std::to_string(lineno) + ": unexpected character '" + std::string(1, line[i]) + "'");
            std::size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            codes.push_back(std::stoull(line.substr(i, j - i)));
            i = j;
        }
        if (!codes.empty()) out.push_back(std::move(codes));
    }
    return out;
}

std::vector<std::size_t> selection_from_codes(const KMInstance& inst,
                                              const std::vector<std::vector<std::uint64_t>>& codes) {
    const auto& ko = inst.k_orbits();
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < codes.size(); ++n) {
        if (static_cast<int>(codes[n].size()) != ko.d())
            throw Error("entry " + std::to_string(n + 1) + " has " + std::to_string(codes[n].size()) + " codes, expected " +
                        std::to_string(ko.d()));
        const Subspace s = decode_block(ko.field(), ko.v(), codes[n]);
        if (s.dim() != ko.d()) throw Error("entry " + std::to_string(n + 1) + " is not of full rank");
        out.push_back(ko.orbit_of(s));
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw Error("two entries lie in the same orbit");
    return out;
}

IsotypeReport isomorphism_type_count(const KMInstance& inst, const ProjectiveGroup& normalizer,
                                     const std::vector<std::pair<std::string, std::vector<MatGF>>>& overgroups,
                                     std::uint64_t budget, SolverStrategy strategy) {
    IsotypeReport rep;
    for (const auto& [name, gens] : overgroups) {
        ProjectiveGroup h(gens);
        KMInstance hi(h, inst.t(), inst.k(), inst.lambda());
        auto r = km_solve(hi, SolveMode::Count, budget, {}, strategy);
        rep.overgroups.push_back({name, h.order(), r.count, r.exhausted});
        if (r.count != 0) throw Error("overgroup " + name + " admits a design; the orbit-length argument does not apply");
        if (r.exhausted) rep.exhausted = true;
    }
    auto r = km_solve(inst, SolveMode::Count, budget, {}, strategy);
    rep.solutions = r.count;
    if (r.exhausted) {
        rep.exhausted = true;
        return rep;
    }
    if (normalizer.order() % inst.group_order() != 0) throw Error("the normalizer order is not a multiple of |G|");
    rep.index = normalizer.order() / inst.group_order();
    if (rep.solutions % rep.index != 0)
        throw Error("solution count " + std::to_string(rep.solutions) + " is not divisible by [N : G] = " +
                    std::to_string(rep.index));
    rep.isotypes = rep.solutions / rep.index;
    return rep;
}

}  // namespace qdesign
