"""Published reference values: graph encodings, realization counts, bounds, rates.

Each mapping sends ``n`` to ``(code, count)``; codes use the upper-triangle
encoding of :mod:`lamanbounds.graph`.  These values are the expected side of
``lamanbounds reproduce`` and of the acceptance tests.
"""
from __future__ import annotations

from decimal import Decimal

# -- graph encodings with counts --------------------------------------------------

# planar maximizers of the realization count
MAX_2D: dict[int, tuple[int, int]] = {
    6: (7916, 24),
    7: (1269995, 56),
    8: (170989214, 136),
    9: (11177989553, 344),
    10: (4778440734593, 880),
    11: (18120782205838348, 2288),
    12: (252590061719913632, 6180),
}

# best members of the degree/cycle family T(n)
FAMILY_T: dict[int, tuple[int, int]] = {
    12: (757486969329934592, 5952),
    13: (3102079810848683155456, 15056),
    14: (12393113433401056197689344, 39696),
    15: (101535867160732294622504828928, 105384),
    16: (283980994531838217547205604229120, 277864),
    17: (65135173642079980743135145171586662400, 731336),
    18: (9061092056503516236392931137633162134437921, 1953816),
}

# best members found in the symmetric family S(n)
FAMILY_S: dict[int, tuple[int, int]] = {
    13: (2731597771584836257824, 15536),
    14: (3932631430916370534240769, 42780),
    15: (94091005932357252120217796609, 112752),
    16: (892527555716690691964688718172672, 312636),
    17: (97035633928660816927022803757023440896, 870414),
    18: (1132478330239973528711451061872988363235584, 2237312),
}

# randomly found graphs containing a triangle
FAN_RANDOM: dict[int, tuple[int, int]] = {
    13: (517844367551685511200, 15268),
    14: (8465213527269428904345612, 40088),
    17: (34561064106536153162036856640676376576, 1953816),
}

# graphs containing the 4-vertex graph 31
FAN_31: dict[int, tuple[int, int]] = {
    7: (127575, 48),
    8: (7654183, 112),
    9: (11987422577, 288),
    10: (26665598300033, 688),
    11: (18226243755613920, 1760),
    12: (57080320167818985484, 4864),
    13: (1845359412452332949520, 12616),
    14: (2116433716010931973523488, 32984),
    15: (366442648507105101448244891666, 83792),
    16: (1054776952932226148552313881544736, 224976),
    17: (260539761471154896904085679883542331426, 570544),
}

# graphs containing the 5-vertex graph 254
FAN_254: dict[int, tuple[int, int]] = {
    6: (3326, 16),
    7: (190686, 32),
    8: (210799326, 96),
    9: (27047004894, 224),
    10: (220302198846, 576),
    11: (511412109882689, 1376),
    12: (270814819769185025, 3648),
    13: (2585030414085585133728, 9472),
    14: (6356539347198988132306956, 24752),
    15: (1109200018557493535348018405392, 62416),
    16: (5598668013338146547621855406197248, 168256),
    17: (176789006904155934327358957938973624416, 433920),
}

# graphs containing the 5-vertex graphs 223 and 239
FAN_223: dict[int, tuple[int, int]] = {
    6: (12511, 16),
    7: (111335, 32),
    8: (6419031, 96),
    9: (812960551, 224),
    10: (209151514913, 576),
    11: (110640260854593, 1376),
    12: (37616617704925531361, 3648),
}
FAN_239: dict[int, tuple[int, int]] = {
    6: (10479, 16),
    7: (103805, 32),
    8: (12339295, 96),
    9: (1024072271, 224),
    10: (221350536519, 576),
    11: (18441562579184833, 1376),
    12: (21047011153048344071, 3648),
}

# graphs containing the three-prism 7916
FAN_7916: dict[int, tuple[int, int]] = {
    7: (120478, 48),
    8: (6475132, 96),
    9: (51946608057, 288),
    10: (18284890201676, 672),
    11: (5366995734673421, 1728),
    12: (523614257391638273, 4128),
    13: (2066305871268252766241, 10944),
    14: (40197303758420411293510144, 28416),
    15: (61903368089062917457613881376, 70656),
    16: (11358585136343922383033065301099552, 177408),
    17: (33233417861308024077754506274593047824, 486528),
}

# spatial maximizers
MAX_3D: dict[int, tuple[int, int]] = {
    4: (63, 2),
    5: (511, 4),
    6: (16350, 16),
    7: (515806, 48),
    8: (49724126, 160),
    9: (7345971057, 640),
    10: (3559487592083, 2560),
}

# spatial graphs containing the tetrahedron
FAN_3D: dict[int, tuple[int, int]] = {
    5: (511, 4),
    6: (7679, 8),
    7: (257911, 32),
    8: (16559991, 96),
    9: (4076665507, 448),
    10: (4894450217603, 1664),
}

# spatial graphs containing the double tetrahedron 511
GENFAN_3D: dict[int, tuple[int, int]] = {
    6: (7679, 8),
    7: (237055, 16),
    8: (14937975, 64),
    9: (38164887119, 256),
    10: (3168405805643, 896),
}

#: (name, dimension, table) for every encoding list.
ENCODING_TABLES: list[tuple[str, int, dict[int, tuple[int, int]]]] = [
    ("max-2d", 2, MAX_2D),
    ("family-T", 2, FAMILY_T),
    ("family-S", 2, FAMILY_S),
    ("fan-random", 2, FAN_RANDOM),
    ("fan-31", 2, FAN_31),
    ("fan-254", 2, FAN_254),
    ("fan-223", 2, FAN_223),
    ("fan-239", 2, FAN_239),
    ("fan-7916", 2, FAN_7916),
    ("max-3d", 3, MAX_3D),
    ("fan-3d", 3, FAN_3D),
    ("genfan-3d", 3, GENFAN_3D),
]

# -- single-step count changes ----------------------------------------------------

# (step, n, code, count, n', code', count', printed factor)
STEP_INCREASES_2D: list[tuple[str, int, int, int, int, int, int, str]] = [
    ("2c", 7, 1269995, 56, 8, 31004235, 96, "1.71"),
    ("2c", 6, 7916, 24, 7, 481867, 44, "1.83"),
    ("2b", 7, 186013, 32, 8, 170989214, 136, "4.25"),
    ("2c", 7, 183548, 32, 8, 170989214, 136, "4.25"),
    ("2c", 8, 20042142, 64, 9, 11177989553, 344, "5.37"),
    ("2c", 9, 4593214614, 128, 10, 22301628505804, 808, "6.31"),
    ("2c", 10, 1248809223262, 256, 11, 2960334732174949, 1976, "7.72"),
    ("2c", 11, 1710909647295913, 512, 12, 15006592507478215906, 4816, "9.41"),
]

STEP_INCREASES_3D: list[tuple[str, int, int, int, int, int, int, str]] = [
    ("3v", 9, 11717490611, 512, 10, 9634462543324, 128, "0.25"),
    ("3v", 8, 49724126, 160, 9, 18848282483, 64, "0.40"),
    ("3v", 7, 515806, 48, 8, 203906043, 32, "0.66"),
    ("2", 7, 981215, 24, 8, 31965132, 24, "1.00"),
    ("3x", 6, 16350, 16, 7, 1973983, 16, "1.00"),
    ("2, 3x", 7, 1973983, 16, 8, 49524604, 128, "8.00"),
    ("3x", 7, 384510, 16, 8, 49724126, 160, "10.00"),
    ("3v", 7, 382463, 16, 8, 49724126, 160, "10.00"),
    ("3x", 8, 15661790, 32, 9, 7309884067, 512, "16.00"),
    ("3x", 9, 2000476603, 48, 10, 2704137746603, 1088, "22.66"),
]

# -- extreme counts by n ----------------------------------------------------------

MIN_2D = {n: 2 ** (n - 2) for n in range(6, 13)}
LOWER_2D = {6: 24, 7: 48, 8: 96, 9: 288, 10: 576}

MIN_3D = {6: 8, 7: 16, 8: 24, 9: 48, 10: 76}
UPPER_3D = {6: 40, 7: 224, 8: 1344, 9: 8448, 10: 54912, 11: 366080, 12: 2489344}

# number of Laman graphs up to isomorphism
LAMAN_GRAPH_COUNTS = {3: 1, 4: 1, 5: 3, 6: 13, 7: 70, 8: 608, 9: 7222, 10: 110132,
                      11: 2039273, 12: 44176717}

# -- growth rates -----------------------------------------------------------------


def _rates(column: dict[int, str]) -> dict[int, Decimal]:
    return {n: Decimal(v) for n, v in column.items()}


RATES_2D: dict[str, dict[int, Decimal]] = {
    "caterpillar": _rates({6: "2.21336", 7: "2.23685", 8: "2.26772", 9: "2.30338", 10: "2.33378",
                           11: "2.36196", 12: "2.39386", 13: "2.40453", 14: "2.43185",
                           15: "2.44695", 16: "2.46890", 17: "2.48875", 18: "2.49378"}),
    "fan-T": _rates({6: "2.28943", 7: "2.30033", 8: "2.32542", 9: "2.35824", 10: "2.38581",
                     11: "2.41159", 12: "2.43198", 13: "2.44156", 14: "2.45868", 15: "2.47445",
                     16: "2.48657", 17: "2.49668", 18: "2.50798"}),
    "fan": _rates({13: "2.44498", 14: "2.46087", 17: "2.49779"}),
    "fan-31": _rates({6: "2", 7: "2.28943", 8: "2.30033", 9: "2.35216", 10: "2.35824",
                      11: "2.38581", 12: "2.43006", 13: "2.44772", 14: "2.46391", 15: "2.47076",
                      16: "2.48794", 17: "2.49160"}),
    "fan-254": _rates({6: "2", 7: "2", 8: "2.28943", 9: "2.30033", 10: "2.35216", 11: "2.35824",
                       12: "2.39802", 13: "2.42197", 14: "2.44251", 15: "2.45031", 16: "2.47166",
                       17: "2.48043"}),
    "fan-7916": _rates({7: "2", 8: "2", 9: "2.28943", 10: "2.30033", 11: "2.35216",
                        12: "2.35824", 13: "2.39802", 14: "2.42197", 15: "2.42906",
                        16: "2.43712", 17: "2.46341"}),
}

RATES_3D: dict[str, dict[int, Decimal]] = {
    "caterpillar": _rates({6: "2.51984", 7: "2.63215", 8: "2.75946", 9: "2.93560", 10: "3.06825"}),
    "fan": _rates({6: "2", 7: "2.51984", 8: "2.63215", 9: "2.95155", 10: "3.06681"}),
    "genfan": _rates({7: "2", 8: "2.51984", 9: "2.82843", 10: "2.95155"}),
}

THEOREM_2D_RATE = Decimal("2.50798")
THEOREM_3D_RATE = Decimal("3.06825")
