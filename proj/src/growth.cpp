#include "spdgeo/growth.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "spdgeo/errors.hpp"

namespace spdgeo {

Rational Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c.size())) return Rational(0);
    return c[k];
}

Rational Polynomial::eval(const Rational& x) const {
    Rational acc(0);
    for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
}

void Polynomial::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    Polynomial r;
    r.c.resize(std::max(c.size(), rhs.c.size()), Rational(0));
    for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = coeff(static_cast<int>(k)) + rhs.coeff(static_cast<int>(k));
    r.trim();
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    Polynomial r;
    r.c.resize(std::max(c.size(), rhs.c.size()), Rational(0));
    for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = coeff(static_cast<int>(k)) - rhs.coeff(static_cast<int>(k));
    r.trim();
    return r;
}

namespace {

struct Scanner {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError(what + " at position " + std::to_string(pos));
    }
    BigInt integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) fail("expected integer");
        return BigInt(s.substr(start, pos - start));
    }
};

} // namespace

Polynomial parse_polynomial(const std::string& text) {
    Scanner sc{text};
    Polynomial p;
    auto add_term = [&](int deg, const Rational& coeff) {
        if (deg >= static_cast<int>(p.c.size())) p.c.resize(deg + 1, Rational(0));
        p.c[deg] += coeff;
    };

    bool first = true;
    while (!sc.done()) {
        int sign = 1;
        char c = sc.peek();
        if (c == '+' || c == '-') {
            sign = c == '-' ? -1 : 1;
            ++sc.pos;
        } else if (!first) {
            sc.fail("expected '+' or '-'");
        }
        // term: coeff? var ("^" nat)? | coeff
        Rational coeff(1);
        bool haveCoeff = false;
        char t = sc.peek();
        if (t == '\0') sc.fail("expected term");
        if (std::isdigit(static_cast<unsigned char>(t))) {
            BigInt num = sc.integer();
            if (sc.peek() == '/') {
                ++sc.pos;
                BigInt den = sc.integer();
                if (den == 0) sc.fail("zero denominator");
                coeff = Rational(num, den);
            } else {
                coeff = Rational(num);
            }
            haveCoeff = true;
        }
        int deg = 0;
        if (sc.peek() == 'n') {
            ++sc.pos;
            deg = 1;
            sc.skip_ws();
            if (sc.peek() == '^') {
                ++sc.pos;
                BigInt e = sc.integer();
                if (e < 0) sc.fail("negative exponent");
                deg = static_cast<int>(e);
            }
        } else if (!haveCoeff) {
            sc.fail("expected coefficient or 'n'");
        }
        add_term(deg, coeff * sign);
        first = false;
    }
    if (first) throw ParseError("empty polynomial at position 0");
    p.trim();
    return p;
}

GrowthVector parse_growth(const std::vector<std::string>& perCoordinate) {
    GrowthVector v;
    for (size_t i = 0; i < perCoordinate.size(); ++i) {
        v.ground.push_back(static_cast<int>(i) + 1);
        v.coords.push_back(parse_polynomial(perCoordinate[i]));
    }
    return v;
}

GrowthVector parse_growth_list(const std::string& commaSeparated) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : commaSeparated) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parse_growth(parts);
}

namespace {

Rational vec_min(const std::vector<Rational>& v, const std::vector<int>& idx) {
    Rational m = v[idx.front()];
    for (int i : idx) m = std::min(m, v[i]);
    return m;
}

// scale a min-0 vector to integers with gcd 1
void integerize(std::vector<Rational>& v) {
    BigInt lcm(1);
    for (const Rational& r : v) lcm = boost::multiprecision::lcm(lcm, denominator(r));
    BigInt g(0);
    for (Rational& r : v) {
        r *= lcm;
        g = boost::multiprecision::gcd(g, numerator(r));
    }
    if (g > 1)
        for (Rational& r : v) r /= g;
}

std::vector<std::vector<int>> one_block(int size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    return {idx};
}

} // namespace

XiElement canonical_point_blocks(std::vector<Rational> values,
                                 const std::vector<std::vector<int>>& blocks) {
    for (const auto& blk : blocks) {
        const Rational m = vec_min(values, blk);
        for (int i : blk) values[i] -= m;
    }
    return XiElement{false, std::move(values)};
}

XiElement canonical_ray_blocks(std::vector<Rational> values,
                               const std::vector<std::vector<int>>& blocks) {
    XiElement e = canonical_point_blocks(std::move(values), blocks);
    e.isRay = true;
    integerize(e.values);
    return e;
}

XiElement canonical_point(std::vector<Rational> values) {
    const int n = static_cast<int>(values.size());
    return canonical_point_blocks(std::move(values), one_block(n));
}

XiElement canonical_ray(std::vector<Rational> values) {
    const int n = static_cast<int>(values.size());
    return canonical_ray_blocks(std::move(values), one_block(n));
}

XiElement xi_limit(const GrowthVector& v) {
    const int m = v.size();
    int maxDeg = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            maxDeg = std::max(maxDeg, (v.coords[i] - v.coords[j]).degree());
    if (maxDeg <= 0) {
        std::vector<Rational> constants(m);
        for (int i = 0; i < m; ++i) constants[i] = (v.coords[i] - v.coords[0]).coeff(0);
        return canonical_point(std::move(constants));
    }
    std::vector<Rational> lead(m);
    for (int i = 0; i < m; ++i) lead[i] = v.coords[i].coeff(maxDeg);
    return canonical_ray(std::move(lead));
}

namespace {

GrowthVector restrict_growth(const GrowthVector& v, const std::vector<int>& positions) {
    GrowthVector r;
    for (int p : positions) {
        r.ground.push_back(v.ground[p]);
        r.coords.push_back(v.coords[p]);
    }
    return r;
}

void pass_rec(const GrowthVector& v, std::vector<Block>& sets,
              std::vector<PassNodeData>& data) {
    Block set = v.ground;
    sets.push_back(set);
    XiElement lim = xi_limit(v);
    if (!lim.isRay) {
        data.push_back(PassNodeData{set, false, lim.values});
        return;
    }
    data.push_back(PassNodeData{set, true, lim.values});
    // children: equal ray coordinates (resolved exactly on the uncanonicalized
    // leading coefficients, which the canonical form preserves)
    std::map<Rational, std::vector<int>> groups;
    for (int i = 0; i < v.size(); ++i) groups[lim.values[i]].push_back(i);
    for (const auto& [val, positions] : groups) {
        (void)val;
        pass_rec(restrict_growth(v, positions), sets, data);
    }
}

} // namespace

PassLimit pass_limit(const GrowthVector& v) {
    std::vector<Block> sets;
    std::vector<PassNodeData> data;
    pass_rec(v, sets, data);
    PassLimit out;
    out.tree = TreePartition(v.size(), sets);
    // reorder data to the tree's canonical set order
    std::vector<PassNodeData> ordered(data.size());
    for (PassNodeData& d : data) {
        auto it = std::find(out.tree.sets().begin(), out.tree.sets().end(), d.set);
        ordered[it - out.tree.sets().begin()] = std::move(d);
    }
    out.data = std::move(ordered);
    return out;
}

KarpLimit karp_limit(const GrowthVector& v) {
    const int n = v.size();
    std::vector<Partition> levels{Partition::trivial(n)};
    std::vector<KarpLevelData> data;

    while (true) {
        const Partition& cur = levels.back();
        // block index lists by position (ground is 1..n)
        std::vector<std::vector<int>> blockIdx;
        for (const Block& b : cur.blocks) {
            std::vector<int> idx;
            for (int lbl : b) idx.push_back(lbl - 1);
            blockIdx.push_back(idx);
        }
        // per-block maximal internal difference degree
        int globalDeg = 0;
        for (const auto& idx : blockIdx)
            for (size_t a = 0; a < idx.size(); ++a)
                for (size_t b = a + 1; b < idx.size(); ++b)
                    globalDeg = std::max(globalDeg,
                                         (v.coords[idx[a]] - v.coords[idx[b]]).degree());
        if (globalDeg <= 0) {
            // joint limit is a point tuple on Xi[J; a_tau]
            std::vector<Rational> constants(n);
            for (const auto& idx : blockIdx)
                for (int i : idx) constants[i] = (v.coords[i] - v.coords[idx.front()]).coeff(0);
            data.push_back(KarpLevelData{false, canonical_point_blocks(constants, blockIdx).values});
            break;
        }
        // joint ray: blocks at the global degree contribute their leading
        // coefficients, slower blocks contribute constants
        std::vector<Rational> dir(n, Rational(0));
        for (const auto& idx : blockIdx) {
            int blockDeg = 0;
            for (size_t a = 0; a < idx.size(); ++a)
                for (size_t b = a + 1; b < idx.size(); ++b)
                    blockDeg = std::max(blockDeg,
                                        (v.coords[idx[a]] - v.coords[idx[b]]).degree());
            if (blockDeg == globalDeg)
                for (int i : idx) dir[i] = v.coords[i].coeff(globalDeg);
        }
        data.push_back(KarpLevelData{true, canonical_ray_blocks(dir, blockIdx).values});

        // refine: within a block, equal direction coordinates stay together
        Partition next;
        next.n = n;
        const std::vector<Rational>& canon = data.back().values;
        for (const Block& b : cur.blocks) {
            std::map<Rational, Block> groups;
            for (int lbl : b) groups[canon[lbl - 1]].push_back(lbl);
            for (auto& [val, blk] : groups) {
                (void)val;
                next.blocks.push_back(std::move(blk));
            }
        }
        next.canonicalize();
        levels.push_back(std::move(next));
    }

    KarpLimit out;
    out.leveled = LeveledTreePartition(levels);
    out.data = std::move(data);
    return out;
}

} // namespace spdgeo
