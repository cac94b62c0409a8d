#pragma once

// Finite groups as dense Cayley tables.
//
// Elements are indices 0..order-1. Haar measure is counting measure with unit
// mass per point, so every integral over G is a plain sum over the table and
// the delta function at the identity is the convolution unit.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"

namespace godement {

using Element = std::size_t;

struct GroupTable {
    std::size_t order = 0;
    std::vector<std::vector<Element>> mult;  // mult[a][b] = a*b
    std::vector<Element> inv;
    Element identity = 0;
    std::vector<std::string> labels;
    // Canonical constructor spec ("cyclic:6", "dihedral:3 x cyclic:2", ...).
    // Metadata only; not part of the table's JSON form.
    std::string id;

    Element op(Element a, Element b) const { return mult[a][b]; }
    Element inverse(Element a) const { return inv[a]; }

    bool is_abelian() const {
        for (Element a = 0; a < order; ++a)
            for (Element b = a + 1; b < order; ++b)
                if (mult[a][b] != mult[b][a]) return false;
        return true;
    }

    /// Smallest k >= 1 with a^k = e.
    std::size_t element_order(Element a) const {
        std::size_t k = 1;
        for (Element x = a; x != identity; x = mult[x][a]) ++k;
        return k;
    }

    std::vector<Element> center() const {
        std::vector<Element> z;
        for (Element a = 0; a < order; ++a) {
            bool central = true;
            for (Element b = 0; b < order && central; ++b) central = mult[a][b] == mult[b][a];
            if (central) z.push_back(a);
        }
        return z;
    }
};

using GroupPtr = std::shared_ptr<const GroupTable>;

/// Tables are equal when their multiplication data agree; labels and id are ignored.
inline bool same_table(const GroupTable& g, const GroupTable& h) {
    return g.order == h.order && g.identity == h.identity && g.mult == h.mult && g.inv == h.inv;
}

inline bool same_group(const GroupPtr& g, const GroupPtr& h) {
    return g == h || (g && h && same_table(*g, *h));
}

// ---------------------------------------------------------------------------
// Validation

enum class Violation {
    shape,
    identity_law,
    inverse_law,
    latin_square,
    associativity,
};

inline const char* to_string(Violation v) {
    switch (v) {
        case Violation::shape: return "shape";
        case Violation::identity_law: return "identity_law";
        case Violation::inverse_law: return "inverse_law";
        case Violation::latin_square: return "latin_square";
        case Violation::associativity: return "associativity";
    }
    return "unknown";
}

struct ViolationRecord {
    Violation kind;
    Element a = 0, b = 0, c = 0;  // first witness; unused slots are 0
    std::string message;
};

struct ValidationReport {
    std::vector<ViolationRecord> violations;

    bool ok() const { return violations.empty(); }
    bool has(Violation kind) const {
        return std::any_of(violations.begin(), violations.end(),
                           [kind](const ViolationRecord& r) { return r.kind == kind; });
    }
};

/// Checks every GroupTable invariant and records the first witness of each
/// kind of failure. Structural problems are reported alone, since the
/// algebraic checks cannot index a malformed table.
inline ValidationReport validate_group(const GroupTable& t) {
    ValidationReport rep;
    auto fail = [&](Violation k, Element a, Element b, Element c, std::string msg) {
        rep.violations.push_back({k, a, b, c, std::move(msg)});
    };

    const std::size_t n = t.order;
    if (n == 0) {
        fail(Violation::shape, 0, 0, 0, "order must be positive");
        return rep;
    }
    if (t.mult.size() != n || t.inv.size() != n || t.identity >= n) {
        fail(Violation::shape, 0, 0, 0, "table sizes disagree with order");
        return rep;
    }
    for (Element a = 0; a < n; ++a) {
        if (t.mult[a].size() != n) {
            fail(Violation::shape, a, 0, 0, "row " + std::to_string(a) + " has wrong length");
            return rep;
        }
        for (Element b = 0; b < n; ++b)
            if (t.mult[a][b] >= n) {
                fail(Violation::shape, a, b, 0, "entry out of range");
                return rep;
            }
        if (t.inv[a] >= n) {
            fail(Violation::shape, a, 0, 0, "inverse out of range");
            return rep;
        }
    }
    if (!t.labels.empty() && t.labels.size() != n)
        fail(Violation::shape, 0, 0, 0, "label count disagrees with order");

    const Element e = t.identity;
    for (Element a = 0; a < n; ++a)
        if (t.mult[e][a] != a || t.mult[a][e] != a) {
            fail(Violation::identity_law, a, 0, 0,
                 "e*a or a*e differs from a for a=" + std::to_string(a));
            break;
        }

    for (Element a = 0; a < n; ++a)
        if (t.mult[a][t.inv[a]] != e || t.mult[t.inv[a]][a] != e) {
            fail(Violation::inverse_law, a, t.inv[a], 0,
                 "a*inv(a) differs from e for a=" + std::to_string(a));
            break;
        }

    [&] {
        std::vector<char> seen(n);
        for (Element a = 0; a < n; ++a) {
            std::fill(seen.begin(), seen.end(), 0);
            for (Element b = 0; b < n; ++b) {
                if (seen[t.mult[a][b]]) {
                    fail(Violation::latin_square, a, b, 0,
                         "row " + std::to_string(a) + " repeats an entry");
                    return;
                }
                seen[t.mult[a][b]] = 1;
            }
        }
        for (Element b = 0; b < n; ++b) {
            std::fill(seen.begin(), seen.end(), 0);
            for (Element a = 0; a < n; ++a) {
                if (seen[t.mult[a][b]]) {
                    fail(Violation::latin_square, a, b, 0,
                         "column " + std::to_string(b) + " repeats an entry");
                    return;
                }
                seen[t.mult[a][b]] = 1;
            }
        }
    }();

    [&] {
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                for (Element c = 0; c < n; ++c)
                    if (t.mult[t.mult[a][b]][c] != t.mult[a][t.mult[b][c]]) {
                        fail(Violation::associativity, a, b, c, "(ab)c differs from a(bc)");
                        return;
                    }
    }();

    return rep;
}

// ---------------------------------------------------------------------------
// Constructors

namespace detail {

/// Fills inv and identity from mult. Assumes a genuine group table.
inline void complete_table(GroupTable& t) {
    const std::size_t n = t.order;
    t.identity = n;
    for (Element a = 0; a < n && t.identity == n; ++a) {
        bool unit = true;
        for (Element b = 0; b < n && unit; ++b) unit = t.mult[a][b] == b && t.mult[b][a] == b;
        if (unit) t.identity = a;
    }
    if (t.identity == n) throw PreconditionError("table has no identity element");
    t.inv.assign(n, 0);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (t.mult[a][b] == t.identity) t.inv[a] = b;
}

inline std::vector<std::vector<Element>> square_table(std::size_t n) {
    return std::vector<std::vector<Element>>(n, std::vector<Element>(n, 0));
}

}  // namespace detail

inline GroupTable build_cyclic(std::size_t m) {
    if (m < 1) throw PreconditionError("build_cyclic: m must be >= 1");
    GroupTable t;
    t.order = m;
    t.mult = detail::square_table(m);
    for (Element a = 0; a < m; ++a)
        for (Element b = 0; b < m; ++b) t.mult[a][b] = (a + b) % m;
    t.identity = 0;
    t.inv.resize(m);
    for (Element a = 0; a < m; ++a) t.inv[a] = (m - a) % m;
    for (Element a = 0; a < m; ++a) t.labels.push_back(std::to_string(a));
    t.id = "cyclic:" + std::to_string(m);
    return t;
}

/// Dihedral group of order 2m. Index k < m is r^k, index m+k is s r^k,
/// with r^k s = s r^{-k}.
inline GroupTable build_dihedral(std::size_t m) {
    if (m < 2) throw PreconditionError("build_dihedral: m must be >= 2");
    const std::size_t n = 2 * m;
    GroupTable t;
    t.order = n;
    t.mult = detail::square_table(n);
    for (Element a = 0; a < n; ++a) {
        const std::size_t fa = a / m, ka = a % m;
        for (Element b = 0; b < n; ++b) {
            const std::size_t fb = b / m, kb = b % m;
            // (s^fa r^ka)(s^fb r^kb) = s^(fa+fb) r^((-1)^fb ka + kb)
            const std::size_t k = (fb ? (m - ka) % m + kb : ka + kb) % m;
            t.mult[a][b] = ((fa + fb) % 2) * m + k;
        }
    }
    detail::complete_table(t);
    for (Element a = 0; a < n; ++a)
        t.labels.push_back((a < m ? std::string("r^") : std::string("s r^")) + std::to_string(a % m));
    t.id = "dihedral:" + std::to_string(m);
    return t;
}

/// Quaternion group Q8 = {±1, ±i, ±j, ±k}, indexed 1,i,j,k,-1,-i,-j,-k.
inline GroupTable build_quaternion() {
    // unit products on {1,i,j,k}: (sign, unit)
    static constexpr int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    static constexpr int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    GroupTable t;
    t.order = 8;
    t.mult = detail::square_table(8);
    for (Element a = 0; a < 8; ++a)
        for (Element b = 0; b < 8; ++b) {
            const int s = (a < 4 ? 1 : -1) * (b < 4 ? 1 : -1) * sign[a % 4][b % 4];
            t.mult[a][b] = static_cast<Element>(unit[a % 4][b % 4] + (s < 0 ? 4 : 0));
        }
    detail::complete_table(t);
    t.labels = {"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
    t.id = "quaternion";
    return t;
}

inline constexpr std::size_t kMaxSymmetricDegree = 5;

/// S_m on all m! permutations in lexicographic order, (στ)(i) = σ(τ(i)).
inline GroupTable build_symmetric(std::size_t m) {
    if (m < 1 || m > kMaxSymmetricDegree)
        throw PreconditionError("build_symmetric: degree must be in [1, 5]");
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(m);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    // lexicographic rank of a permutation
    auto rank = [&](const std::vector<std::size_t>& q) {
        return static_cast<Element>(
            std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };

    const std::size_t n = perms.size();
    GroupTable t;
    t.order = n;
    t.mult = detail::square_table(n);
    std::vector<std::size_t> comp(m);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            for (std::size_t i = 0; i < m; ++i) comp[i] = perms[a][perms[b][i]];
            t.mult[a][b] = rank(comp);
        }
    detail::complete_table(t);
    for (const auto& q : perms) {
        std::string s = "[";
        for (std::size_t i = 0; i < m; ++i) s += (i ? "," : "") + std::to_string(q[i]);
        t.labels.push_back(s + "]");
    }
    t.id = "symmetric:" + std::to_string(m);
    return t;
}

/// G x H with pairs (g,h) at index g*|H| + h.
inline GroupTable direct_product(const GroupTable& g, const GroupTable& h) {
    const std::size_t n = g.order * h.order;
    GroupTable t;
    t.order = n;
    t.mult = detail::square_table(n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            t.mult[a][b] = g.mult[a / h.order][b / h.order] * h.order +
                           h.mult[a % h.order][b % h.order];
    t.identity = g.identity * h.order + h.identity;
    t.inv.resize(n);
    for (Element a = 0; a < n; ++a) t.inv[a] = g.inv[a / h.order] * h.order + h.inv[a % h.order];
    for (Element a = 0; a < n; ++a) {
        const auto lg = a / h.order < g.labels.size() ? g.labels[a / h.order] : std::to_string(a / h.order);
        const auto lh = a % h.order < h.labels.size() ? h.labels[a % h.order] : std::to_string(a % h.order);
        t.labels.push_back("(" + lg + "," + lh + ")");
    }
    t.id = g.id + " x " + h.id;
    return t;
}

// ---------------------------------------------------------------------------
// Named specs: "cyclic:m", "dihedral:m", "klein", "quaternion",
// "symmetric:m", joined by " x " (or "x") for direct products.

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

inline GroupTable build_factor(const std::string& raw) {
    const std::string spec = trim(raw);
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::optional<std::size_t> param;
    if (colon != std::string::npos) {
        const std::string digits = spec.substr(colon + 1);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw SchemaError("bad group parameter in '" + spec + "'");
        param = std::stoul(digits);
    }
    auto need = [&]() -> std::size_t {
        if (!param) throw SchemaError("group kind '" + kind + "' needs a parameter");
        return *param;
    };
    if (kind == "cyclic" || kind == "Z") return build_cyclic(need());
    if (kind == "dihedral" || kind == "D") return build_dihedral(need());
    if (kind == "symmetric" || kind == "S") return build_symmetric(need());
    if (kind == "quaternion" || kind == "Q8") return build_quaternion();
    if (kind == "klein" || kind == "V4") {
        auto t = build_dihedral(2);
        t.id = "klein";
        return t;
    }
    throw SchemaError("unknown group kind '" + kind + "'");
}

}  // namespace detail

/// Builds a group from a spec string; the result's id is the canonical spec.
inline GroupTable build_from_spec(const std::string& spec) {
    std::vector<std::string> factors;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= spec.size(); ++i) {
        if (i == spec.size() || spec[i] == 'x') {
            factors.push_back(spec.substr(start, i - start));
            start = i + 1;
        }
    }
    GroupTable t = detail::build_factor(factors.front());
    for (std::size_t i = 1; i < factors.size(); ++i)
        t = direct_product(t, detail::build_factor(factors[i]));
    return t;
}

inline GroupPtr make_group(GroupTable t) { return std::make_shared<const GroupTable>(std::move(t)); }
inline GroupPtr make_group(const std::string& spec) { return make_group(build_from_spec(spec)); }

}  // namespace godement
