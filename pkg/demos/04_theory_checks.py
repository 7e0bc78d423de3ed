"""Monte Carlo look at the large-n behavior of the embedding.

For a binary SBM the class-y embedding mean is row y of B, its variance
shrinks like 1/n, and the coordinates become nearly Gaussian.
"""
import numpy as np

from graphencoder import SbmSpec
from graphencoder import theory

spec = SbmSpec()
rep = theory.moment_report(spec, 1000, 20, seed=0)
print("empirical class means:\n", rep.means.round(4))
print("B:\n", spec.B)
print("largest gap:", f"{rep.mean_error():.1e}")

sc = theory.variance_scaling(spec, [250, 1000], 40, seed=0)
print("\nvariance ratio n=250 -> n=1000 (expect about 4):")
print(sc.ratios[0].round(2))

for n in (250, 2000):
    nr = theory.normality_report(spec, n, 20, seed=0)
    print(f"\nn={n}: max |skew| {np.nanmax(np.abs(nr.skewness)):.3f}, "
          f"max |excess kurtosis| {np.nanmax(np.abs(nr.excess_kurtosis)):.3f}, mean KS {nr.mean_ks():.3f}")

bg = theory.bayes_gap(SbmSpec(weight_max=10.0), 300, 10, seed=0)
print(f"\nweighted SBM, n=300: LDA {bg.lda_error:.3f} vs known-parameter rule {bg.plugin_error:.3f}")
