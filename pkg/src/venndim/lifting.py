"""Choosing stagger orders for the prism lift.

With every surface's window opening and closing in id order the lift need
not be Venn: near the closing end only a suffix of the surfaces is active,
and if that suffix is not itself Venn its disconnected regions carry over.
The lift therefore searches enter/leave orders and keeps the first that
produces a well-formed simple Venn diagram.  "Well-formed" means every check
the package has that does not involve reducibility:

* the grid validates and is simple;
* the region census is Venn;
* the Euler-characteristic screen passes;
* deleting any surface removes exactly as many regions as it has edges.

Full reducibility is deliberately not a criterion, so that the reducibility
of lifted diagrams remains an observation rather than a design choice.
"""
from __future__ import annotations

import itertools
from typing import NamedTuple

from .analysis import deletion_identity, is_simple, is_venn
from .errors import InvalidDiagram
from .grid import GridDiagram, lift_prism
from .topology import compress, topology_screen


class LiftOrders(NamedTuple):
    enter: tuple[int, ...]
    leave: tuple[int, ...]


def well_formed(g: GridDiagram) -> bool:
    if not (is_venn(g) and is_simple(g)):
        return False
    if not topology_screen(g).ok:
        return False
    return all(a == b for a, b in deletion_identity(g).values())


def candidate_orders(scope):
    """Plain order first, then lexicographic (enter, leave) pairs."""
    perms = list(itertools.permutations(scope))
    for enter in perms:
        for leave in perms:
            yield LiftOrders(enter, leave)


def choose_lift_orders(g: GridDiagram) -> LiftOrders:
    small = compress(g)
    for orders in candidate_orders(g.scope):
        try:
            lifted = lift_prism(small, *orders)
        except InvalidDiagram:
            continue
        if well_formed(lifted):
            return orders
    raise InvalidDiagram(f"no stagger order lifts {g.name or 'the diagram'} to a well-formed Venn diagram")


def lift(g: GridDiagram, orders: LiftOrders | None = None) -> tuple[GridDiagram, LiftOrders]:
    """Prism lift with the given orders, or the first well-formed ones."""
    if orders is None:
        orders = choose_lift_orders(g)
    lifted = lift_prism(g, *orders)
    tag = ",".join(map(str, orders.enter)) + "/" + ",".join(map(str, orders.leave))
    name = f"lift[{tag}]({g.name})" if g.name else f"lift[{tag}]"
    return GridDiagram(lifted.cells, lifted.scope, name), orders


def lift_times(g: GridDiagram, times: int) -> tuple[GridDiagram, list[LiftOrders]]:
    used = []
    for _ in range(times):
        g, orders = lift(g)
        used.append(orders)
    return g, used
