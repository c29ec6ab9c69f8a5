#pragma once
// Type-I Hermite-Pade polynomials for the family [1, f, ..., f^{k-1}].
//
// Unknowns: k(n+1) coefficients. Conditions: the coefficients of z^m in
// sum_j Q_j f^j vanish for n >= m > -(k-1)(n+1), i.e. k(n+1)-1 rows, so the
// kernel is never empty and the residual is O(z^{-(k-1)(n+1)}).

#include "sheetlab/ap.hpp"
#include "sheetlab/measure.hpp"
#include "sheetlab/series.hpp"

#include <string>
#include <vector>

namespace sheetlab {

using Poly = std::vector<Complex>;  // ascending coefficients

struct HPSolution {
  int k = 0;
  int n = 0;
  int precision_bits = 0;
  std::vector<Poly> polys;
  int achieved_order = 0;  // filled by hp_type1 from the defining system: (k-1)(n+1)
  std::string normalization = "highest nonzero coefficient of the last nonzero polynomial = 1";
  bool real_arithmetic = false;
  bool degenerate_kernel = false;
  double last_pivot_ratio = 0.0;  // |R_last| / |R_00| of the pivoted QR, log2
  /// All kernel vectors when degenerate_kernel is set (the first equals polys).
  std::vector<std::vector<Poly>> kernel;
};

/// Required germ length (coefficients c_0..c_{len-1}) for hp_type1.
int hp_required_length(int k, int n);
int hp_order(int k, int n);

/// germs[j] is the germ of f^j, j = 0..k-1 (germs[0] the unit germ).
HPSolution hp_type1(const std::vector<LaurentGerm>& germs, int n, int precision_bits);
/// Convenience wrapper building [1, f, f^2, f^3] from a family.
std::vector<LaurentGerm> hp_germs(const GermFamily& fam, int k);

/// Certified residual order: the largest d such that the coefficients of z^{-m}, m < d,
/// (and all positive powers) are below 2^{-bits/4} relative to the absolute sum of
/// the contributing terms. Throws OrderShortfall when d < (k-1)(n+1).
int residual_order(const HPSolution& sol, const std::vector<LaurentGerm>& germs);

struct ZeroSet {
  std::vector<Complex> roots;
  std::vector<int> multiplicities;
  double residual_bound = 0.0;  // max |P(r)| / sum |a_i||r|^i
  int precision_bits = 0;
  std::vector<std::complex<double>> roots_cd() const;
};

/// All roots by Aberth-Ehrlich simultaneous iteration seeded by companion-matrix
/// eigenvalues. tol bounds the returned residual_bound.
ZeroSet polyroots(const Poly& poly, double tol, int precision_bits);
/// Roots and the normalized zero-counting measure (1/deg) sum delta_r.
std::pair<ZeroSet, DiscreteMeasure> polyroots_and_measure(const Poly& poly, double tol,
                                                          int precision_bits);

int poly_degree(const Poly& p, int precision_bits);

}  // namespace sheetlab
