"""
Tree-cut widths and scrambles
=============================
"""

# %%
from gonlab import Scramble, egg_cut_number, harary, harary4_path_decomposition, hitting_number, tcd_tally

G = harary(4, 14)
t = tcd_tally(G, harary4_path_decomposition(14))
print("links:", t.links)
print("nodes:", t.nodes, "tunneling:", t.tunnels)
print("width:", t.width)

# %%
# Width stays at 6 however long the cycle gets.
print({n: tcd_tally(harary(4, n), harary4_path_decomposition(n)).width for n in range(6, 30, 3)})

# %%
# A scramble of consecutive pairs: its order is bounded by the width above.
eggs = [[i, i + 1] for i in range(0, 14, 2)]
S = Scramble(G, eggs)
print("hitting", hitting_number(S), "egg cut", egg_cut_number(S))
