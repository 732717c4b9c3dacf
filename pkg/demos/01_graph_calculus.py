"""Tour of the discrete calculus: graphs, (co)boundary maps and the Laplacian.

Run as:  python3 demos/01_graph_calculus.py
"""

import numpy as np

from graphdirac import (
    adjacency_map,
    apply_adjoint_d,
    apply_d,
    apply_delta1,
    build_cycle,
    build_path,
    coboundary_map,
    cycle_edge_vector,
    cycle_space_dims,
    degree_map,
    incidence_map,
    laplacian_map,
    parse_graph,
    serialize_graph,
)

print("== building blocks ==")
g = build_cycle(4)
print("square:", g)
print("adjacency lists:", g.adjacency)
print("directed edges (tail, head):", g.directed_edges)
print("degree sum equals directed edge count:",
      int(g.degrees.sum()), "=", g.directed_edge_count)

print("\n== the coboundary d: node functions to edge functions ==")
f = np.array([0.0, 1.0, 3.0, 1.0])
df = apply_d(g, f)
for (i, k), value in zip(g.directed_edges, np.asarray(df)):
    print(f"  (df)({i}->{k}) = f_{k} - f_{i} = {value:+.1f}")
print("df is antisymmetric:", df.antisymmetric)

print("\n== boundary and Laplacian ==")
print("delta1 df (net inflow per node):", apply_delta1(g, df))
lap = laplacian_map(g)
print("Delta = A - V:")
print(lap.toarray())
print("Delta kills constants:", lap.apply(np.ones(4)))
d = coboundary_map(g)
print("d*d equals -2 Delta entrywise:",
      (d.adjoint() @ d).entrywise_equal(-2 * lap))
print("||df||^2 == (f | -2 Delta f):",
      np.isclose(float(np.sum(np.asarray(df) ** 2)),
                 float(f @ (-2 * lap).apply(f))))

print("\n== incidence matrix comparison ==")
B = incidence_map(g)
print("B (one oriented column per bond):")
print(B.toarray())
print("B Bt = V - A:",
      (B @ B.adjoint()).entrywise_equal(degree_map(g) - adjacency_map(g)))

print("\n== cycle space ==")
dims = cycle_space_dims(g)
print(f"rank(d*) = {dims.rank_dstar} (= n - components),"
      f" kernel dim = {dims.kernel_dim}")
z = cycle_edge_vector(g, [0, 1, 2, 3])
print("d* annihilates the oriented 4-cycle:", apply_adjoint_d(g, z))

print("\n== file round trip ==")
payload = serialize_graph(build_path(4))
print(payload.decode().strip())
print("parsed back identical:", parse_graph(payload).adjacency == build_path(4).adjacency)
