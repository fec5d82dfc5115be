"""
Reading, validating and writing a dataset directory.

A dataset directory looks like:

    dataset.toml          format tag and the list of key varieties
    keys/<name>.toml      one key variety descriptor each
    classes/<no>.toml     one candidate record with its section table

All files are TOML. Loading turns them into the types from `records.py`;
`validate_dataset()` cross-checks them (weights, profiles, quasi-homogeneity
of every section row) and `save_dataset()` writes them back canonically.
"""

import collections
import logging
import os

import toml

from . import records
from .exceptions import DatasetError, FanoVerifyException, ParseError
from .poly import CoordinateRing, parameter_values

DATASET_FORMAT = "fanoverify-dataset/1"
DATASET_ENVIRONMENT_VARIABLE = "FANOVERIFY_DATASET"


def default_dataset_path():
    """
    The shipped dataset, unless `FANOVERIFY_DATASET` points elsewhere.
    """
    path = os.environ.get(DATASET_ENVIRONMENT_VARIABLE)
    if path:
        return path
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


class Dataset:
    """
    Key varieties and candidate records read from one directory.
    """

    def __init__(self, keys, records, path=None, description="", sources=None):
        self.keys = collections.OrderedDict(sorted(keys.items()))
        self.records = collections.OrderedDict(sorted(records.items()))
        self.path = path
        self.description = description
        # File name to TOML source, used to find line numbers.
        self.sources = sources or {}

    def __len__(self):
        return len(self.records)

    def key_for(self, record):
        try:
            return self.keys[record.key]
        except KeyError:
            raise DatasetError(
                "Class {} references unknown key variety '{}'".format(record.number, record.key),
                self.class_path(record.number),
            )

    def record(self, number):
        try:
            return self.records[int(number)]
        except (KeyError, ValueError):
            raise DatasetError("No class {} in the dataset".format(number), self.path)

    def select(self, numbers=None):
        """
        Records for `numbers`, or all records if `numbers` is None, sorted by
        class number.
        """
        if numbers is None:
            return list(self.records.values())
        return [self.record(n) for n in sorted(set(int(n) for n in numbers))]

    def class_path(self, number):
        if self.path is None:
            return None
        return os.path.join(self.path, "classes", "{}.toml".format(number))

    def key_path(self, name):
        if self.path is None:
            return None
        return os.path.join(self.path, "keys", "{}.toml".format(name))

    def line_of(self, path, needle):
        return _line_of(self.sources.get(path, ""), needle)

    def __str__(self):
        return "{} classes over {} key varieties".format(len(self.records), len(self.keys))

    def object(self):
        out = collections.OrderedDict()
        out["format"] = DATASET_FORMAT
        if self.description:
            out["description"] = self.description
        out["keys"] = list(self.keys)
        return out


################################################################################
## Loading
################################################################################


def _read_toml(path):
    try:
        with open(path, "r") as f:
            text = f.read()
    except OSError as e:
        raise DatasetError("Cannot read file: {}".format(e.strerror), path)
    try:
        return toml.loads(text), text
    except toml.TomlDecodeError as e:
        raise DatasetError("Invalid TOML: {}".format(e.msg), path, e.lineno)


def _line_of(text, needle):
    """
    First line (1-based) of `text` containing `needle`, or None.
    """
    if not needle:
        return None
    for i, line in enumerate(text.splitlines()):
        if needle in line:
            return i + 1
    return None


def load_dataset(path=None, validate=True):
    """
    Load the dataset in directory `path` (the default dataset if None).
    With `validate` the dataset is cross-checked and the first problem is
    raised as a `DatasetError`.
    """
    path = path or default_dataset_path()
    if not os.path.isdir(path):
        raise DatasetError("Dataset directory does not exist", path)
    logging.status("Loading dataset from {}".format(path))

    index_path = os.path.join(path, "dataset.toml")
    index, _ = _read_toml(index_path)
    if index.get("format") != DATASET_FORMAT:
        raise DatasetError(
            "Unsupported dataset format '{}', expected '{}'".format(
                index.get("format"), DATASET_FORMAT
            ),
            index_path,
            1,
        )

    sources = {}
    keys = {}
    for name in index.get("keys", []):
        key_path = os.path.join(path, "keys", "{}.toml".format(name))
        obj, sources[key_path] = _read_toml(key_path)
        key = records.KeyVariety.from_object(obj, key_path)
        if key.name != name:
            raise DatasetError(
                "Key file declares name '{}'".format(key.name),
                key_path,
                _line_of(sources[key_path], "name"),
            )
        keys[name] = key

    found = {}
    classes_dir = os.path.join(path, "classes")
    if os.path.isdir(classes_dir):
        for filename in sorted(os.listdir(classes_dir)):
            if not filename.endswith(".toml"):
                continue
            class_path = os.path.join(classes_dir, filename)
            obj, sources[class_path] = _read_toml(class_path)
            try:
                record = records.CandidateRecord.from_object(obj, class_path)
            except ParseError as e:
                raise DatasetError(str(e), class_path)
            if "{}.toml".format(record.number) != filename:
                raise DatasetError(
                    "File holds class {}".format(record.number),
                    class_path,
                    _line_of(sources[class_path], "number"),
                )
            found[record.number] = record
    logging.debug("Read {} key varieties and {} classes".format(len(keys), len(found)))

    dataset = Dataset(keys, found, path, index.get("description", ""), sources)
    if validate:
        report = validate_dataset(dataset)
        if not report.ok():
            raise report.problems[0]
    return dataset


################################################################################
## Validation
################################################################################


class ValidationReport:
    """
    Problems found by `validate_dataset()`, each a `DatasetError` carrying
    the file and (when it could be found) the line.
    """

    def __init__(self, checked=0):
        self.checked = checked
        self.problems = []

    def add(self, message, path=None, line=None):
        self.problems.append(DatasetError(message, path, line))

    def ok(self):
        return len(self.problems) == 0

    def __str__(self):
        if self.ok():
            return "Dataset valid: {} classes checked".format(self.checked)
        lines = ["{} problem(s) in {} classes:".format(len(self.problems), self.checked)]
        lines.extend("  {}".format(p) for p in self.problems)
        return "\n".join(lines)

    def object(self):
        return {
            "checked": self.checked,
            "ok": self.ok(),
            "problems": [str(p) for p in self.problems],
        }


def _check_polynomial(ring, text, weight, parameters):
    """
    Parse `text` over QQ and return a problem string, or None if `text` is
    zero or quasi-homogeneous of weight `weight` (any weight if None).
    """
    try:
        f = ring.parse(text, parameters)
    except ParseError as e:
        return str(e)
    except KeyError as e:
        return "unknown name {} in '{}'".format(e, text)
    homogeneity = ring.weighted_degree(f)
    if not homogeneity.is_homogeneous():
        return "'{}' is {}".format(text, homogeneity)
    if None not in (homogeneity.degree, weight) and homogeneity.degree != weight:
        return "'{}' has weight {}, expected {}".format(text, homogeneity.degree, weight)
    return None


def _row_needle(row):
    return 'coordinate = "{}"'.format(row.coordinate)


def validate_record(dataset, record):
    """
    Problems with one record, as `(message, needle)` pairs; `needle` is
    the text to search for in the class file to find the line.
    """
    problems = []
    key = dataset.key_for(record)

    profile = record.profile
    if any(a >= b for (a, _), (b, _) in zip(profile, profile[1:])):
        problems.append(("profile degrees are not strictly increasing", "profile"))
    if any(m < 1 or a < 1 for a, m in profile):
        problems.append(("profile entries must be positive", "profile"))
    if record.profile_sum() != key.dimension - 3:
        problems.append(
            (
                "profile sum {} differs from dim {} - 3 = {}".format(
                    record.profile_sum(), key.name, key.dimension - 3
                ),
                "profile",
            )
        )

    try:
        space = key.space_for(record)
    except FanoVerifyException as e:
        problems.append((str(e), "key"))
        return problems

    if key.has_equations():
        ring = CoordinateRing(space.names, space.weights)
        values = parameter_values(key.parameters + key.affine, "key", 0)
        for equation in key.equations:
            error = _check_polynomial(ring, equation, None, values)
            if error:
                problems.append(("key equation {}".format(error), "key"))

    table = record.table
    if table is None:
        problems.append(("class has no section table", "number"))
        return problems

    for new, old in table.new_coordinates.items():
        if old not in space:
            problems.append(("coordinate change replaces unknown '{}'".format(old), new))
    if problems:
        return problems
    changed = records.changed_space(key, record)
    names = table.used_parameters(changed.names + space.names + space.affine)
    if table.parameters is not None:
        for name in names:
            if name not in table.parameters:
                problems.append(("parameter '{}' is not declared".format(name), name))
    values = parameter_values(names, 0, 0)

    if table.coordinate_change:
        change_ring = CoordinateRing(changed.names, changed.weights)
        for old, text in table.coordinate_change.items():
            if old not in space:
                problems.append(("substitution for unknown coordinate '{}'".format(old), old))
                continue
            error = _check_polynomial(change_ring, text, space.weight(old), values)
            if error:
                problems.append(("substitution for {}: {}".format(old, error), text))

    eliminated = table.eliminated()
    seen = set()
    for row in table.rows:
        if row.coordinate in seen:
            problems.append(
                ("'{}' is eliminated twice".format(row.coordinate), _row_needle(row))
            )
        seen.add(row.coordinate)
        if row.coordinate not in changed:
            problems.append(
                ("row eliminates unknown coordinate '{}'".format(row.coordinate), _row_needle(row))
            )
            continue
        if changed.weight(row.coordinate) != row.weight:
            problems.append(
                (
                    "row weight {} but {} has weight {}".format(
                        row.weight, row.coordinate, changed.weight(row.coordinate)
                    ),
                    _row_needle(row),
                )
            )
    if problems:
        return problems

    survivors = changed.without(eliminated)
    ring = CoordinateRing(survivors.names, survivors.weights)
    for row in table.rows:
        used = [name for name in row.names() if name in changed and name not in survivors]
        if used:
            problems.append(
                (
                    "row for {} uses eliminated {}".format(row.coordinate, ", ".join(used)),
                    _row_needle(row),
                )
            )
            continue
        error = _check_polynomial(ring, row.rhs, row.weight, values)
        if error:
            problems.append(("row for {}: {}".format(row.coordinate, error), _row_needle(row)))

    try:
        x_space = records.section_space(key, record, "X")
        level_space = records.section_space(key, record, table.level)
    except FanoVerifyException as e:
        problems.append((str(e), "rows"))
        return problems
    if x_space.sorted_weights() != record.ambient:
        problems.append(
            (
                "section table gives {} but the record says {}".format(
                    x_space, record.ambient_string()
                ),
                "ambient",
            )
        )
    if table.profile("X") != record.profile:
        problems.append(
            (
                "section table profile {} differs from the record profile".format(
                    table.profile("X")
                ),
                "profile",
            )
        )
    if table.embedding and sorted(table.embedding) != sorted(level_space.names):
        problems.append(
            (
                "embedding lists {} but the {} coordinates are {}".format(
                    ",".join(table.embedding), table.level, ",".join(level_space.names)
                ),
                "embedding",
            )
        )
    for finding in record.findings:
        if finding.chart not in level_space and finding.chart not in x_space:
            problems.append(
                ("finding on unknown chart '{}'".format(finding.chart), "findings")
            )
    return problems


def validate_dataset(dataset, numbers=None):
    """
    Cross-check the records selected by `numbers` (all by default) against
    their key varieties. Returns a `ValidationReport`.
    """
    selected = dataset.select(numbers)
    report = ValidationReport(len(selected))
    for name, key in dataset.keys.items():
        key_path = dataset.key_path(name)
        if len(key.coordinates) < 2:
            report.add("key has fewer than two coordinates", key_path)
        if key.witness is None:
            logging.debug("Key {} has no primality witness".format(name))
    for record in selected:
        class_path = dataset.class_path(record.number)
        try:
            problems = validate_record(dataset, record)
        except FanoVerifyException as e:
            problems = [(str(e), None)]
        for message, needle in problems:
            report.add(message, class_path, dataset.line_of(class_path, needle))
    return report


################################################################################
## Saving
################################################################################


def _write_toml(path, obj):
    with open(path, "w") as f:
        f.write(toml.dumps(obj))


def save_dataset(dataset, path):
    """
    Write `dataset` to directory `path`: classes in ascending order, fixed
    key order in every file.
    """
    os.makedirs(os.path.join(path, "keys"), exist_ok=True)
    os.makedirs(os.path.join(path, "classes"), exist_ok=True)
    _write_toml(os.path.join(path, "dataset.toml"), dataset.object())
    for name, key in dataset.keys.items():
        _write_toml(os.path.join(path, "keys", "{}.toml".format(name)), key.object())
    for number, record in dataset.records.items():
        _write_toml(os.path.join(path, "classes", "{}.toml".format(number)), record.object())
    logging.info("Wrote {} to {}".format(dataset, path))
