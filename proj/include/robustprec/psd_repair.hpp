#pragma once

#include <string>

#include "robustprec/linalg.hpp"
#include "robustprec/scale.hpp"

namespace robustprec {

// Positive-definite matrix with the smallest eigenvalue recorded as a
// diagnostic.
struct PDMatrix {
  Matrix mat;
  double min_eig = 0.0;
};

enum class PsdKind { NPD, OGK, OGK_REWEIGHTED, NONE };

const char* to_string(PsdKind kind);
PsdKind psd_kind_from_string(const std::string& name);

struct PsdSpec {
  PsdKind kind = PsdKind::NPD;
  double delta = 1e-6;           // NPD eigenvalue floor
  int ogk_iterations = 2;        // 1 or 2
  double reweight_quantile = 0.9;

  void validate() const;
};

// Eigenvalue clipping: spectral decomposition of the symmetric input with
// eigenvalues floored at delta. Inputs whose smallest eigenvalue already
// clears the floor are returned unchanged.
PDMatrix nearest_pd(const Matrix& a, double delta);

// Orthogonalized pairwise construction: scale the columns to unit robust
// scale, eigendecompose the pairwise correlation matrix, and rebuild with
// robust variances of the principal directions in place of the eigenvalues.
// With iterations = 2 the construction is applied again to the rotated data
// before back-transforming. Throws DegenerateDirection when any direction
// has zero robust scale.
PDMatrix ogk(const Matrix& x, const ScaleSpec& spec, int iterations = 2);

// Hard-rejection reweighting of the ogk estimate: rows whose squared
// Mahalanobis distance exceeds chi2_p(quantile) * median(d^2) / chi2_p(0.5)
// are dropped and the classical covariance of the survivors is returned.
// Throws TooFewSurvivors if fewer than p+1 rows remain.
PDMatrix ogk_reweighted(const Matrix& x, const ScaleSpec& spec, double quantile = 0.9,
                        int iterations = 2);

}  // namespace robustprec
