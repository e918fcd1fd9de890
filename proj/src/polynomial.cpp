#include "quadrisig/polynomial.hpp"

#include <algorithm>
#include <tuple>

namespace quadrisig {

namespace {

bool key_less(std::int64_t r1, std::int64_t s1, std::int64_t r2, std::int64_t s2) {
    return std::tie(r1, s1) < std::tie(r2, s2);
}

}  // namespace

SparseExactPolynomial SparseExactPolynomial::constant(Int c) {
    SparseExactPolynomial p;
    if (c != 0) p.terms_.push_back({0, 0, std::move(c)});
    return p;
}

Int SparseExactPolynomial::coefficient(std::int64_t r, std::int64_t s) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), std::make_pair(r, s),
                               [](const Term& t, const std::pair<std::int64_t, std::int64_t>& k) {
                                   return key_less(t.r, t.s, k.first, k.second);
                               });
    if (it != terms_.end() && it->r == r && it->s == s) return it->coeff;
    return 0;
}

void SparseExactPolynomial::add_term(std::int64_t r, std::int64_t s, const Int& c) {
    if (c == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), std::make_pair(r, s),
                               [](const Term& t, const std::pair<std::int64_t, std::int64_t>& k) {
                                   return key_less(t.r, t.s, k.first, k.second);
                               });
    if (it != terms_.end() && it->r == r && it->s == s) {
        it->coeff += c;
        if (it->coeff == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {r, s, c});
    }
}

void SparseExactPolynomial::accumulate(const SparseExactPolynomial& src, const Int& scale,
                                       std::int64_t dr, std::int64_t ds) {
    if (scale == 0 || src.empty()) return;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + src.terms_.size());
    auto a = terms_.begin();
    auto b = src.terms_.begin();
    while (a != terms_.end() || b != src.terms_.end()) {
        if (b == src.terms_.end()) {
            merged.push_back(std::move(*a));
            ++a;
            continue;
        }
        const std::int64_t br = b->r + dr;
        const std::int64_t bs = b->s + ds;
        if (a == terms_.end() || key_less(br, bs, a->r, a->s)) {
            Int c = b->coeff * scale;
            if (c != 0) merged.push_back({br, bs, std::move(c)});
            ++b;
        } else if (key_less(a->r, a->s, br, bs)) {
            merged.push_back(std::move(*a));
            ++a;
        } else {
            Int c = a->coeff + b->coeff * scale;
            if (c != 0) merged.push_back({a->r, a->s, std::move(c)});
            ++a;
            ++b;
        }
    }
    terms_ = std::move(merged);
}

void SparseExactPolynomial::flip_y() {
    for (Term& t : terms_) {
        if (is_odd(t.s)) t.coeff = -t.coeff;
    }
}

std::int64_t SparseExactPolynomial::max_total_degree() const {
    std::int64_t deg = 0;
    for (const Term& t : terms_) deg = std::max(deg, t.r + t.s);
    return deg;
}

Rat SparseExactPolynomial::evaluate(const Rat& x, const Rat& y) const {
    Rat acc = 0;
    for (const Term& t : terms_) {
        acc += Rat(t.coeff) * rat_pow(x, static_cast<std::uint64_t>(t.r)) *
               rat_pow(y, static_cast<std::uint64_t>(t.s));
    }
    return acc;
}

bool SparseExactPolynomial::operator==(const SparseExactPolynomial& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].r != other.terms_[i].r || terms_[i].s != other.terms_[i].s ||
            terms_[i].coeff != other.terms_[i].coeff)
            return false;
    }
    return true;
}

Rat evaluate(const SparseExactPolynomial& poly, const Rat& x, const Rat& y) {
    return poly.evaluate(x, y);
}

}  // namespace quadrisig
