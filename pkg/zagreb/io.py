"""
A module for reading and writing trees: graph6 lines and DOT text.
"""

import logging
from pathlib import Path
from typing import Iterable, List, Union

import networkx as nx

from .common import Graph6Error
from .tree import Tree, from_networkx, to_networkx

log = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"


def write_graph6(t: Tree) -> str:
    """
    Encode a tree as a graph6 line (without header or trailing newline).

    Examples
    --------
    >>> write_graph6(build_tree([(0, 1)]))
    'A_'
    """
    return nx.to_graph6_bytes(to_networkx(t), header=False).decode("ascii").strip()


def read_graph6(line: Union[str, bytes]) -> Tree:
    """
    Decode one graph6 line into a `Tree`.

    Raises
    ------
    Graph6Error
        The text is not valid graph6.
    TreeValidationError
        The encoded graph is valid but not a tree (a subclass names why).
    """
    if isinstance(line, str):
        try:
            line = line.encode("ascii")
        except UnicodeEncodeError as err:
            raise Graph6Error(f"graph6 lines are ASCII, got {line!r}") from err
    line = line.strip()
    if line.startswith(GRAPH6_HEADER.encode()):
        line = line[len(GRAPH6_HEADER) :]
    if not line:
        raise Graph6Error("Empty graph6 line")
    try:
        G = nx.from_graph6_bytes(line)
    except (nx.NetworkXError, ValueError, IndexError, TypeError) as err:
        raise Graph6Error(f"Malformed graph6 line {line!r}: {err}") from err
    return from_networkx(G)


def load_graph6(g6_file: Union[str, Path]) -> List[Tree]:
    """
    Load a file of graph6 lines, one tree per line. Blank lines are skipped.

    Parameters
    ----------
    g6_file : str or Path
        Name of file to be loaded

    Returns
    -------
    trees : list of Tree
    """
    log.info(f"Loading trees from {Path(g6_file).name}")
    trees = []
    with open(g6_file) as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                trees.append(read_graph6(line))
            except ValueError as err:
                # keep the error type, add the location
                raise type(err)(f"{Path(g6_file).name}:{lineno}: {err}") from err
    log.info(f"Loaded {len(trees)} trees")
    return trees


def save_graph6(trees: Iterable[Tree], g6_file: Union[str, Path]) -> int:
    """Write trees to a graph6 file, one per line; return the count."""
    count = 0
    with open(g6_file, "w") as f:
        for t in trees:
            f.write(write_graph6(t) + "\n")
            count += 1
    log.info(f"Wrote {count} trees to {Path(g6_file).name}")
    return count


def write_dot(t: Tree, degrees: bool = False, name: str = "T") -> str:
    """
    Render a tree as an undirected DOT graph.

    Parameters
    ----------
    t : Tree
    degrees : bool, optional
        Label vertices with their degree as well as their id.
    name : str, optional
        Graph name.

    Returns
    -------
    str
        DOT text with one ``u -- v;`` line per edge.
    """
    lines = [f"graph {name} {{"]
    if degrees:
        for v in range(t.vertex_count):
            lines.append(f'  {v} [label="{v} (d={t.degree(v)})"];')
    elif t.vertex_count == 1:
        lines.append("  0;")
    for u, v in t.edge_list():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
