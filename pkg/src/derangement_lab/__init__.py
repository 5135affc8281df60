"""
Derangement Lab - derangement graphs of finite permutation groups.

Builds the derangement graph of a transitive group, solves for its clique
and coclique numbers, enumerates normal block systems and certifies the
chain-of-normal-partitions clique.

Quick Start:
    from derangement_lab.catalog.builtin import get_entry
    from derangement_lab.analysis.dgraph import build_graph, clique_number

    G = get_entry("S4-natural").to_group()
    graph = build_graph(G)
    print(clique_number(graph).size)    # 4

Command line:
    derangement-lab analyze PSL(3,2)-deg7
    derangement-lab verify --jobs 4
"""

__version__ = "0.1.0"
