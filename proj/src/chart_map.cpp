#include "stratglue/chart_map.hpp"

#include "stratglue/error.hpp"

#include <algorithm>
#include <sstream>

namespace stratglue::glue {

Letter phi(int a) { return {LetterKind::Phi, a}; }
Letter bundle_map(int a, int b) { return {LetterKind::BPhi, a, b}; }
Letter tau(int a, int b) { return {LetterKind::Tau, a, b}; }
Letter tau_nu(int a, int b, int c) { return {LetterKind::TauNu, a, b, c}; }
Letter psi(int a, int b) { return {LetterKind::Psi, a, b}; }
Letter psi_nu(int a, int b, int c) { return {LetterKind::PsiNu, a, b, c}; }
Letter restriction() { return {LetterKind::Restrict}; }

Word compose(const Word& outer, const Word& inner)
{
    Word out = outer;
    out.insert(out.end(), inner.begin(), inner.end());
    return out;
}

namespace {

/// One rewrite at the leftmost redex; false if w is already normal.
bool rewrite_once(Word& w)
{
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].kind == LetterKind::Restrict) {
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
            return true;
        }
        if (i + 1 == w.size()) break;
        const Letter x = w[i];
        const Letter y = w[i + 1];
        const auto at = w.begin() + static_cast<std::ptrdiff_t>(i);
        if (x.kind == LetterKind::Phi && y.kind == LetterKind::Tau && y.a == x.a) {
            *at = phi(y.b);
            *(at + 1) = bundle_map(y.a, y.b);
            return true;
        }
        if (x.kind == LetterKind::Phi && y.kind == LetterKind::Psi && y.a == x.a) {
            *at = phi(y.b);
            w.erase(at + 1);
            return true;
        }
        if (x.kind == LetterKind::BPhi && y.kind == LetterKind::TauNu && y.a == x.a && y.c == x.b) {
            *at = bundle_map(y.b, y.c);
            *(at + 1) = bundle_map(y.a, y.b);
            return true;
        }
        if (x.kind == LetterKind::BPhi && y.kind == LetterKind::PsiNu && y.a == x.a && y.c == x.b) {
            *at = bundle_map(y.b, y.c);
            w.erase(at + 1);
            return true;
        }
    }
    return false;
}

} // namespace

Word normal_form(Word w)
{
    while (rewrite_once(w)) {
    }
    return w;
}

std::string word_text(const Word& w)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out << " . ";
        const Letter& l = w[i];
        switch (l.kind) {
        case LetterKind::Phi: out << "phi[" << l.a << "]"; break;
        case LetterKind::BPhi: out << "Phi[" << l.a << "," << l.b << "]"; break;
        case LetterKind::Tau: out << "tau[" << l.a << "," << l.b << "]"; break;
        case LetterKind::TauNu: out << "tau_nu[" << l.a << "," << l.b << "," << l.c << "]"; break;
        case LetterKind::Psi: out << "psi[" << l.a << "," << l.b << "]"; break;
        case LetterKind::PsiNu: out << "psi_nu[" << l.a << "," << l.b << "," << l.c << "]"; break;
        case LetterKind::Restrict: out << "restrict"; break;
        }
    }
    return out.str();
}

Point restrict_to(const Point& y, Subset coords)
{
    Point out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (coords & (Subset{1} << i)) out[i] = y[i];
    }
    return out;
}

Point add(const Point& x, const Point& y)
{
    if (x.size() != y.size()) throw DomainError("points of different dimension");
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    return out;
}

std::optional<Subset> dominant_base(const strata::LinearStratification& s, int alpha, const Point& y)
{
    const Subset support = strata::support_of(y);
    for (Subset base : s.members(alpha)) {
        if (!strata::contains(support, base)) continue;
        bool dominant = true;
        for (int i = 0; i < s.dim() && dominant; ++i) {
            if (!(base & (Subset{1} << i))) continue;
            const Rational big = y[i].norm2();
            for (int k = 0; k < s.dim() && dominant; ++k) {
                if ((support & ~base) & (Subset{1} << k)) dominant = y[k].norm2() < big;
            }
        }
        if (dominant) return base;
    }
    return std::nullopt;
}

namespace {

void merge(Tower& t, std::size_t i)
{
    if (t.size() < i + 2) throw DomainError("tower too short for this map");
    t[i] = add(t[i], t[i + 1]);
    t.erase(t.begin() + static_cast<std::ptrdiff_t>(i + 1));
}

void split_base(Tower& t, const strata::LinearStratification& s, int alpha)
{
    if (t.empty()) throw DomainError("empty tower");
    const auto base = dominant_base(s, alpha, t[0]);
    if (!base) throw DomainError("point is not in the image of the gluing map being inverted");
    const Point y = t[0];
    const Subset rest = strata::support_of(y) & ~*base;
    t[0] = restrict_to(y, *base);
    if (t.size() == 1) {
        t.push_back(restrict_to(y, rest));
    } else {
        t[1] = add(restrict_to(y, rest), t[1]);
    }
}

} // namespace

Tower evaluate(const Word& w, const strata::LinearStratification& s, Tower t)
{
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        switch (it->kind) {
        case LetterKind::Phi:
            while (t.size() > 1) merge(t, 0);
            break;
        case LetterKind::BPhi: merge(t, 0); break;
        case LetterKind::Tau:
        case LetterKind::TauNu: merge(t, 1); break;
        case LetterKind::Psi:
        case LetterKind::PsiNu: split_base(t, s, it->a); break;
        case LetterKind::Restrict: break;
        }
    }
    return t;
}

} // namespace stratglue::glue
