"""Periodic table positions for the 118 chemical elements.

Lanthanides and actinides are assigned group 3 (their parent column) so
every element has a concrete (period, group) cell for plotting.
"""

from __future__ import annotations

# (atomic number, symbol, period, group)
_ELEMENTS: tuple[tuple[int, str, int, int], ...] = (
    (1, "H", 1, 1), (2, "He", 1, 18),
    (3, "Li", 2, 1), (4, "Be", 2, 2), (5, "B", 2, 13), (6, "C", 2, 14),
    (7, "N", 2, 15), (8, "O", 2, 16), (9, "F", 2, 17), (10, "Ne", 2, 18),
    (11, "Na", 3, 1), (12, "Mg", 3, 2), (13, "Al", 3, 13), (14, "Si", 3, 14),
    (15, "P", 3, 15), (16, "S", 3, 16), (17, "Cl", 3, 17), (18, "Ar", 3, 18),
    (19, "K", 4, 1), (20, "Ca", 4, 2), (21, "Sc", 4, 3), (22, "Ti", 4, 4),
    (23, "V", 4, 5), (24, "Cr", 4, 6), (25, "Mn", 4, 7), (26, "Fe", 4, 8),
    (27, "Co", 4, 9), (28, "Ni", 4, 10), (29, "Cu", 4, 11), (30, "Zn", 4, 12),
    (31, "Ga", 4, 13), (32, "Ge", 4, 14), (33, "As", 4, 15), (34, "Se", 4, 16),
    (35, "Br", 4, 17), (36, "Kr", 4, 18),
    (37, "Rb", 5, 1), (38, "Sr", 5, 2), (39, "Y", 5, 3), (40, "Zr", 5, 4),
    (41, "Nb", 5, 5), (42, "Mo", 5, 6), (43, "Tc", 5, 7), (44, "Ru", 5, 8),
    (45, "Rh", 5, 9), (46, "Pd", 5, 10), (47, "Ag", 5, 11), (48, "Cd", 5, 12),
    (49, "In", 5, 13), (50, "Sn", 5, 14), (51, "Sb", 5, 15), (52, "Te", 5, 16),
    (53, "I", 5, 17), (54, "Xe", 5, 18),
    (55, "Cs", 6, 1), (56, "Ba", 6, 2),
    (57, "La", 6, 3), (58, "Ce", 6, 3), (59, "Pr", 6, 3), (60, "Nd", 6, 3),
    (61, "Pm", 6, 3), (62, "Sm", 6, 3), (63, "Eu", 6, 3), (64, "Gd", 6, 3),
    (65, "Tb", 6, 3), (66, "Dy", 6, 3), (67, "Ho", 6, 3), (68, "Er", 6, 3),
    (69, "Tm", 6, 3), (70, "Yb", 6, 3), (71, "Lu", 6, 3),
    (72, "Hf", 6, 4), (73, "Ta", 6, 5), (74, "W", 6, 6), (75, "Re", 6, 7),
    (76, "Os", 6, 8), (77, "Ir", 6, 9), (78, "Pt", 6, 10), (79, "Au", 6, 11),
    (80, "Hg", 6, 12), (81, "Tl", 6, 13), (82, "Pb", 6, 14), (83, "Bi", 6, 15),
    (84, "Po", 6, 16), (85, "At", 6, 17), (86, "Rn", 6, 18),
    (87, "Fr", 7, 1), (88, "Ra", 7, 2),
    (89, "Ac", 7, 3), (90, "Th", 7, 3), (91, "Pa", 7, 3), (92, "U", 7, 3),
    (93, "Np", 7, 3), (94, "Pu", 7, 3), (95, "Am", 7, 3), (96, "Cm", 7, 3),
    (97, "Bk", 7, 3), (98, "Cf", 7, 3), (99, "Es", 7, 3), (100, "Fm", 7, 3),
    (101, "Md", 7, 3), (102, "No", 7, 3), (103, "Lr", 7, 3),
    (104, "Rf", 7, 4), (105, "Db", 7, 5), (106, "Sg", 7, 6), (107, "Bh", 7, 7),
    (108, "Hs", 7, 8), (109, "Mt", 7, 9), (110, "Ds", 7, 10), (111, "Rg", 7, 11),
    (112, "Cn", 7, 12), (113, "Nh", 7, 13), (114, "Fl", 7, 14), (115, "Mc", 7, 15),
    (116, "Lv", 7, 16), (117, "Ts", 7, 17), (118, "Og", 7, 18),
)

ELEMENT_SYMBOLS: frozenset[str] = frozenset(sym for _, sym, _, _ in _ELEMENTS)

ATOMIC_NUMBER: dict[str, int] = {sym: z for z, sym, _, _ in _ELEMENTS}

POSITION: dict[str, tuple[int, int]] = {
    sym: (period, group) for _, sym, period, group in _ELEMENTS
}


def is_element(symbol: str) -> bool:
    return symbol in ELEMENT_SYMBOLS
