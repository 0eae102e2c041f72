"""Draw a 2D map of embedding spaces from their pairwise distances.

Each space becomes one point; two chosen anchor spaces pin the frame (first
anchor at the origin, second on the positive x-axis) and the rest are placed
so their pairwise distances are honored as well as the plane allows. The
reported stress quantifies the residual distortion.
"""

import numpy as np

from rpd import (
    EmbeddingMatrix,
    layout_from_distances,
    random_gaussian_embedding,
    rpd_pairwise_matrix,
)

n, d = 800, 40
rng = np.random.default_rng(3)
base = random_gaussian_embedding(n, d, seed=30)

# A family of spaces: two independent references plus noisy relatives of
# the first one, mimicking one method drifting away from another.
spaces = [("anchor_a", base), ("anchor_b", random_gaussian_embedding(n, d, seed=31))]
for i, scale in enumerate((0.3, 0.8, 1.5)):
    noise = rng.standard_normal(base.matrix.shape)
    spaces.append((f"variant_{i}", EmbeddingMatrix(base.vocab, base.matrix + scale * noise)))

matrix = rpd_pairwise_matrix(spaces)
print("pairwise distance matrix:")
print(matrix.to_tsv())

layout = layout_from_distances(matrix.values, matrix.names, "anchor_a", "anchor_b")
print("2D layout (anchor_a at origin, anchor_b on the x-axis):")
print(layout.to_tsv())

print("interpretation: variants with less noise sit closer to anchor_a,")
print(f"residual stress {layout.stress:.3f} reflects forcing the distances into a plane")
