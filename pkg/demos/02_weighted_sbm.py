"""Classify vertices of a weighted stochastic block model.

Three blocks, within-block edge probability 0.2, across 0.1, edge weights
uniform on [0, 10).  Error should fall quickly as the graph grows.
"""
from graphencoder import SbmSpec, encode, gen_weighted_sbm, repeat_cv

spec = SbmSpec(weight_max=10.0)

g, y = gen_weighted_sbm(300, spec, seed=1)
z = encode(g, y).values
print("first five embedded vertices (label, z):")
for i in range(5):
    print(" ", y.labels[i], z[i].round(3))

print("\n n   LDA error   sd over fold seeds")
for n in (50, 100, 200, 400):
    g, y = gen_weighted_sbm(n, spec, seed=1)
    mean, sd, _ = repeat_cv(g, y, folds=5, reps=10, base_seed=0)
    print(f"{n:4d}   {mean:.3f}      {sd:.3f}")

g, y = gen_weighted_sbm(400, spec, seed=1)
mean, _, _ = repeat_cv(g, y, folds=5, reps=10, base_seed=0, classifier="knn", k=5)
print(f"\n5-NN on the same n=400 graph: {mean:.3f}")
