"""Encode a tiny weighted graph by hand and with the library.

Three vertices, two classes.  Each embedding coordinate is the average
edge weight from a vertex into one class.
"""
import numpy as np

from graphencoder import EncodeOptions, GeneralGraph, LabelVector, encode_dense, encode_sparse, sparsify

A = np.array([[0, 2, 4], [2, 0, 6], [4, 6, 0]], dtype=float)
y = LabelVector(np.array([1, 1, 2]), 2)

raw = encode_dense(A, y, EncodeOptions(normalize=False))
print("raw embedding (row i = vertex i):")
print(raw.values)
# vertex 1: mean weight into class 1 is (0 + 2) / 2 = 1, into class 2 it is 4 / 1

g = GeneralGraph.from_dense(A)
print("\nsame thing from triplets:")
print(encode_sparse(sparsify(g), y, EncodeOptions(normalize=False)).values)

print("\nrow-normalized (the default):")
print(np.round(encode_dense(A, y).values, 4))

# Vertex 3's label hidden: it still gets embedded, but no longer contributes
# to the class-2 column, which now has no members and is rejected.
try:
    encode_dense(A, y.masked(np.array([False, False, True])))
except ValueError as exc:
    print("\nhiding the only class-2 vertex:", exc)
