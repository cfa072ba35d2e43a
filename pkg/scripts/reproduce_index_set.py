"""Which Fano indices 2 <= q <= 20 admit a numerical candidate at all."""
from qfano.search import SearchConfig, search

nonempty = [q for q in range(2, 21) if search(SearchConfig(q, partitions=4))]
print("indices with candidates:", nonempty)
print("indices without:", [q for q in range(2, 21) if q not in nonempty])
