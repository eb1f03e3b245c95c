#pragma once

#include "stratglue/region.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace stratglue::glue {

/// Primitive maps of the coordinate model. Class ids a, b, c index the strata.
///   Phi(a)          gluing map of a: bundle point -> point of V
///   BPhi(a,b)       bundle map covering the restriction of Phi(a) to the b-part
///   Tau(a,b)        tubular identification N(Gl^a_b) -> Gl^a
///   TauNu(a,b,c)    the same one level up, N(Gl^a_b)_c -> Gl^a_c
///   Psi(a,b)        Gl^b over the image of Phi(a) -> Gl^a
///   PsiNu(a,b,c)    its lift on normal bundles
///   Restrict        restriction to a smaller domain (absorbed)
enum class LetterKind { Phi, BPhi, Tau, TauNu, Psi, PsiNu, Restrict };

struct Letter {
    LetterKind kind;
    int a = -1;
    int b = -1;
    int c = -1;

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

Letter phi(int a);
Letter bundle_map(int a, int b);
Letter tau(int a, int b);
Letter tau_nu(int a, int b, int c);
Letter psi(int a, int b);
Letter psi_nu(int a, int b, int c);
Letter restriction();

/// Composition word; the leftmost letter is applied last.
using Word = std::vector<Letter>;

Word compose(const Word& outer, const Word& inner);

/// Rewrites to the unique normal form:
///   Phi(a) Tau(a,b)          -> Phi(b) BPhi(a,b)
///   Phi(a) Psi(a,b)          -> Phi(b)
///   BPhi(a,c) TauNu(a,b,c)   -> BPhi(b,c) BPhi(a,b)
///   BPhi(a,c) PsiNu(a,b,c)   -> BPhi(b,c)
///   Restrict                 -> (empty)
Word normal_form(Word w);

std::string word_text(const Word& w);

/// Points of iterated bundles: layer 0 is the base point, later layers are
/// successive fibre vectors, all written in the coordinates of V.
using Tower = std::vector<Point>;

/// Applies the word letter by letter, right to left. Throws DomainError when
/// a Psi letter meets a point outside the image it inverts.
Tower evaluate(const Word& w, const strata::LinearStratification& s, Tower t);

/// Splits y into its part on the unique member I of J_alpha formed by the
/// strictly largest coordinates of y, and the rest. Empty optional if none.
std::optional<Subset> dominant_base(const strata::LinearStratification& s, int alpha, const Point& y);

Point restrict_to(const Point& y, Subset coords);
Point add(const Point& x, const Point& y);

} // namespace stratglue::glue
