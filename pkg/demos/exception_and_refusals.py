"""Where the certificate stops: the exceptional family and degenerate matrices.

Three small cases, each printed with its verdict:
  * five general points in P^3 (n = c), where the formula is known to miscount;
  * degree data whose determinantal locus is empty;
  * a matrix with two equal columns, whose minors have the wrong codimension.
"""

from detdeform import DegreeData, HomogeneousMatrix, certificate, hypothesis_report, random_matrix

points = DegreeData(3, [0, 0], [1, 1, 1, 1])
tr = certificate(random_matrix(points, seed=1))
print(f"{points}: exception family = {hypothesis_report(points).exception_family}, "
      f"formula = {tr.formula_lambda}, hom(I_X, A) = {tr.hom_IX_A}")
print(f"   verdict {tr.verdict} (the tests alone would say {tr.inner_verdict})")

empty = DegreeData(3, [0, 0], [0, 0, 5])
tr = certificate(random_matrix(empty, seed=1))
print(f"{empty}: verdict {tr.verdict}")

A = random_matrix(DegreeData(4, [0, 0], [1, 1, 1, 1]), seed=3)
rows = [list(r) for r in A.entries]
for r in rows:
    r[1] = r[0]
tr = certificate(HomogeneousMatrix(A.dd, rows), deletion=False)
print(f"two equal columns: codim I_t estimated {tr.codim_It.codim} (expected {A.c}), verdict {tr.verdict}")
print(f"   numbers are still reported: ext1_R = {tr.ext1_R}, hom(I_X, A) = {tr.hom_IX_A}")
