"""
Data types read from a dataset: key varieties, section tables, expected
findings and candidate records.

These are plain containers. Each has `object()` returning a dict that
`dataset.py` writes back to TOML, and a `from_object()` classmethod that
reads it.
"""

import collections

from . import parser
from .exceptions import DatasetError, FanoVerifyException
from .singularity import Basket, QuotientSingularity
from .wps import WeightedSpace, parse_multiset


class KeyVariety:
    """
    A key variety: its coordinates, how their weights are determined, and
    optionally its equations, Hilbert numerator, primality witness and the
    dimension of its singular locus away from the vertex.

    Weights come either from `weight_table` (class number to a list of
    weights, one per projective coordinate) or from a weight `family`
    (family name to a list of expressions in `d`).
    """

    def __init__(
        self,
        name,
        dimension,
        coordinates,
        affine=(),
        weight_table=None,
        families=None,
        equations=(),
        parameters=(),
        numerator=None,
        witness=None,
        singular_dimension=None,
        chart_order=(),
        description="",
    ):
        self.name = name
        self.dimension = int(dimension)
        self.coordinates = list(coordinates)
        self.affine = list(affine)
        self.weight_table = {str(k): list(v) for k, v in (weight_table or {}).items()}
        self.families = {k: list(v) for k, v in (families or {}).items()}
        self.equations = list(equations)
        self.parameters = list(parameters)
        self.numerator = numerator
        self.witness = witness
        self.singular_dimension = singular_dimension
        self.chart_order = list(chart_order)
        self.description = description

    def has_equations(self):
        return len(self.equations) > 0

    def weights_for(self, record):
        """
        Weights of the projective coordinates for `record`.
        """
        key = str(record.number)
        if key in self.weight_table:
            weights = self.weight_table[key]
        elif record.family is not None:
            if record.family not in self.families:
                raise FanoVerifyException(
                    "Key {} has no weight family '{}'".format(self.name, record.family)
                )
            variables = {"d": record.d}
            weights = [
                parser.evaluate_integer(w, variables) for w in self.families[record.family]
            ]
        elif len(self.weight_table) == 1 and "default" in self.weight_table:
            weights = self.weight_table["default"]
        else:
            raise FanoVerifyException(
                "Key {} has no weights for class {}".format(self.name, record.number)
            )
        if len(weights) != len(self.coordinates):
            raise FanoVerifyException(
                "Key {} has {} coordinates but {} weights for class {}".format(
                    self.name, len(self.coordinates), len(weights), record.number
                )
            )
        return [int(w) for w in weights]

    def space_for(self, record):
        return WeightedSpace(self.coordinates, self.weights_for(record), self.affine)

    def __str__(self):
        return "{} (dimension {}, {} coordinates)".format(
            self.name, self.dimension, len(self.coordinates)
        )

    def object(self):
        out = collections.OrderedDict()
        out["name"] = self.name
        out["dimension"] = self.dimension
        if self.description:
            out["description"] = self.description
        out["coordinates"] = self.coordinates
        if self.affine:
            out["affine"] = self.affine
        if self.witness is not None:
            out["witness"] = self.witness
        if self.singular_dimension is not None:
            out["singular_dimension"] = self.singular_dimension
        if self.chart_order:
            out["chart_order"] = self.chart_order
        if self.numerator is not None:
            out["numerator"] = self.numerator
        if self.parameters:
            out["parameters"] = self.parameters
        if self.equations:
            out["equations"] = self.equations
        if self.weight_table:
            out["weight_table"] = collections.OrderedDict(
                sorted(self.weight_table.items(), key=lambda kv: _number_key(kv[0]))
            )
        if self.families:
            out["families"] = collections.OrderedDict(
                (k, {"weights": v}) for k, v in sorted(self.families.items())
            )
        return out

    @classmethod
    def from_object(cls, obj, path=None):
        try:
            families = {
                k: v["weights"] for k, v in obj.get("families", {}).items()
            }
            return cls(
                name=obj["name"],
                dimension=obj["dimension"],
                coordinates=obj["coordinates"],
                affine=obj.get("affine", []),
                weight_table=obj.get("weight_table"),
                families=families,
                equations=obj.get("equations", []),
                parameters=obj.get("parameters", []),
                numerator=obj.get("numerator"),
                witness=obj.get("witness"),
                singular_dimension=obj.get("singular_dimension"),
                chart_order=obj.get("chart_order", []),
                description=obj.get("description", ""),
            )
        except KeyError as e:
            raise DatasetError("Key variety is missing field {}".format(e), path)


class SectionRow:
    """
    One row `coordinate = rhs` of weight `weight`.
    """

    def __init__(self, weight, coordinate, rhs):
        self.weight = int(weight)
        self.coordinate = coordinate
        self.rhs = str(rhs)

    def names(self):
        return parser.identifiers(self.rhs)

    def __str__(self):
        return "{}: {} = {}".format(self.weight, self.coordinate, self.rhs)

    def object(self):
        return collections.OrderedDict(
            [("weight", self.weight), ("coordinate", self.coordinate), ("rhs", self.rhs)]
        )


class ChartStep:
    """
    Analyse the `chart`-chart restricted to the locus where the
    coordinates in `zero` vanish.
    """

    def __init__(self, chart, zero=()):
        self.chart = chart
        self.zero = list(zero)

    def __str__(self):
        if not self.zero:
            return "{}-chart".format(self.chart)
        return "{}-chart on {{{}=0}}".format(self.chart, "=".join(self.zero))

    def object(self):
        return collections.OrderedDict([("chart", self.chart), ("zero", self.zero)])


class SectionTable:
    """
    The rows eliminating coordinates of a key variety, in listing order.

    `level` is "T" when the rows cut out T (one weight one cut beyond X)
    and "C" when they cut out the curve C (two weight one cuts beyond X).
    A `coordinate_change` maps old coordinates to expressions in new ones
    and is applied before the rows; `new_coordinates` maps each new
    coordinate to the old coordinate whose weight it takes.
    """

    LEVELS = ("T", "C")

    def __init__(
        self,
        rows,
        level="T",
        source="printed",
        embedding=(),
        coordinate_change=None,
        new_coordinates=None,
        chart_order=(),
        chart_plan=None,
        parameters=None,
    ):
        if level not in self.LEVELS:
            raise FanoVerifyException("Unknown table level '{}'".format(level))
        self.rows = list(rows)
        self.level = level
        self.source = source
        self.embedding = list(embedding)
        self.coordinate_change = dict(coordinate_change or {})
        self.new_coordinates = dict(new_coordinates or {})
        self.chart_order = list(chart_order)
        self.chart_plan = None if chart_plan is None else list(chart_plan)
        self.parameters = None if parameters is None else list(parameters)

    def _drop_last_weight_one(self, rows, count):
        rows = list(rows)
        for _ in range(count):
            for i in range(len(rows) - 1, -1, -1):
                if rows[i].weight == 1:
                    del rows[i]
                    break
            else:
                raise FanoVerifyException("Table has too few weight one rows for its level")
        return rows

    def rows_for(self, level):
        """
        Rows cutting out X, T or C.
        """
        extra = {"X": 1, "T": 2, "C": 3}[level] - {"T": 2, "C": 3}[self.level]
        if extra > 0:
            raise FanoVerifyException(
                "A {}-level table cannot describe {}".format(self.level, level)
            )
        return self._drop_last_weight_one(self.rows, -extra)

    def eliminated(self, level=None):
        rows = self.rows if level is None else self.rows_for(level)
        return [row.coordinate for row in rows]

    def profile(self, level):
        """
        `[(weight, count)]` of the rows for `level`, ascending weights.
        """
        counts = collections.Counter(row.weight for row in self.rows_for(level))
        return sorted(counts.items())

    def used_parameters(self, coordinates):
        """
        Names in the RHS templates (and the coordinate change) that are not
        coordinates.
        """
        coordinates = set(coordinates) | set(self.new_coordinates)
        names = []
        texts = [row.rhs for row in self.rows] + list(self.coordinate_change.values())
        for text in texts:
            for name in parser.identifiers(text):
                if name not in coordinates and name not in names:
                    names.append(name)
        return names

    def object(self):
        out = collections.OrderedDict()
        out["level"] = self.level
        out["source"] = self.source
        if self.embedding:
            out["embedding"] = self.embedding
        if self.chart_order:
            out["chart_order"] = self.chart_order
        if self.parameters is not None:
            out["parameters"] = self.parameters
        if self.coordinate_change:
            out["coordinate_change"] = collections.OrderedDict(
                [
                    ("new", collections.OrderedDict(self.new_coordinates.items())),
                    ("substitutions", collections.OrderedDict(self.coordinate_change.items())),
                ]
            )
        if self.chart_plan is not None:
            out["chart_plan"] = [step.object() for step in self.chart_plan]
        out["rows"] = [row.object() for row in self.rows]
        return out

    @classmethod
    def from_object(cls, obj, path=None):
        try:
            rows = [SectionRow(r["weight"], r["coordinate"], r["rhs"]) for r in obj["rows"]]
        except KeyError as e:
            raise DatasetError("Section row is missing field {}".format(e), path)
        change = obj.get("coordinate_change", {})
        plan = obj.get("chart_plan")
        if plan is not None:
            plan = [ChartStep(step["chart"], step.get("zero", [])) for step in plan]
        return cls(
            rows,
            level=obj.get("level", "T"),
            source=obj.get("source", "printed"),
            embedding=obj.get("embedding", []),
            coordinate_change=change.get("substitutions", {}),
            new_coordinates=change.get("new", {}),
            chart_order=obj.get("chart_order", []),
            chart_plan=plan,
            parameters=obj.get("parameters"),
        )


class Finding:
    """
    Singular points of one surface type on a chart: where, which type and
    how many. Records carry the expected ones, reports the computed ones.
    """

    def __init__(self, chart, singularity, count=1, locus=""):
        self.chart = chart
        self.singularity = singularity
        self.count = int(count)
        self.locus = locus

    def key(self):
        return (self.chart, str(self.singularity))

    def __str__(self):
        where = " at {}".format(self.locus) if self.locus else ""
        count = "{}x".format(self.count) if self.count != 1 else ""
        return "{}{} on the {}-chart{}".format(count, self.singularity, self.chart, where)

    def object(self):
        out = collections.OrderedDict()
        out["chart"] = self.chart
        out["type"] = str(self.singularity)
        out["count"] = self.count
        if self.locus:
            out["locus"] = self.locus
        return out

    @classmethod
    def from_object(cls, obj, path=None):
        try:
            return cls(
                obj["chart"],
                QuotientSingularity.parse(obj["type"]),
                obj.get("count", 1),
                obj.get("locus", ""),
            )
        except KeyError as e:
            raise DatasetError("Expected finding is missing field {}".format(e), path)


class CandidateRecord:
    """
    One class of candidate Fano 3-folds: its ambient weights, basket and
    the complete intersection profile `[(a_i, m_i)]` inside a key variety.
    """

    def __init__(
        self,
        number,
        key,
        ambient,
        basket,
        profile,
        table=None,
        family=None,
        d=None,
        findings=(),
        settings=None,
    ):
        self.number = int(number)
        self.key = key
        self.ambient = sorted(int(w) for w in ambient)
        self.basket = basket
        self.profile = [(int(a), int(m)) for a, m in profile]
        self.table = table
        self.family = family
        self.d = None if d is None else int(d)
        self.findings = list(findings)
        self.settings = dict(settings or {})

    def profile_sum(self):
        return sum(m for _, m in self.profile)

    def profile_string(self):
        parts = []
        for a, m in self.profile:
            parts.append("({})".format(a) if m == 1 else "({})^{}".format(a, m))
        return "".join(parts)

    def ambient_string(self):
        from .wps import multiset_string

        return multiset_string(self.ambient)

    def __str__(self):
        return "No.{} in {}: X in {} with basket {}".format(
            self.number, self.key, self.ambient_string(), self.basket
        )

    def object(self):
        out = collections.OrderedDict()
        out["number"] = self.number
        out["key"] = self.key
        if self.family is not None:
            out["family"] = self.family
            out["d"] = self.d
        out["ambient"] = self.ambient_string()
        out["basket"] = self.basket.object()
        out["profile"] = [[a, m] for a, m in self.profile]
        if self.settings:
            out["settings"] = self.settings
        if self.table is not None:
            out["table"] = self.table.object()
        if self.findings:
            out["findings"] = [f.object() for f in self.findings]
        return out

    @classmethod
    def from_object(cls, obj, path=None):
        try:
            table = obj.get("table")
            if table is not None:
                table = SectionTable.from_object(table, path)
            return cls(
                number=obj["number"],
                key=obj["key"],
                ambient=parse_multiset(obj["ambient"])
                if isinstance(obj["ambient"], str)
                else obj["ambient"],
                basket=Basket.parse(obj.get("basket", [])),
                profile=obj["profile"],
                table=table,
                family=obj.get("family"),
                d=obj.get("d"),
                findings=[Finding.from_object(f, path) for f in obj.get("findings", [])],
                settings=obj.get("settings"),
            )
        except KeyError as e:
            raise DatasetError("Candidate record is missing field {}".format(e), path)
        except FanoVerifyException as e:
            if isinstance(e, DatasetError):
                raise
            raise DatasetError(str(e), path)


def _number_key(text):
    try:
        return (0, int(text))
    except ValueError:
        return (1, text)


def changed_space(key, record):
    """
    Key ambient for `record` after the table's coordinate change, if any.
    New coordinates take the weight of the coordinate they replace.
    """
    space = key.space_for(record)
    table = record.table
    if table is None or not table.new_coordinates:
        return space
    replacements = {}
    for new, old in table.new_coordinates.items():
        replacements.setdefault(old, []).append((new, space.weight(old)))
    return space.renamed(replacements)


def section_space(key, record, level="X"):
    """
    Ambient of X, T or C for `record`: the key ambient after the table's
    coordinate change, minus the coordinates eliminated at `level`.
    """
    space = changed_space(key, record)
    table = record.table
    if table is None or not table.rows:
        return space
    return space.without(table.eliminated(level))
