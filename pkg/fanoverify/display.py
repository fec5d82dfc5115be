"""
Utilities for creating output in various formats.
"""

import collections
import json
import logging
import textwrap

import toml

from . import helpers
from . import report as report_module


class Display:
    def __init__(self, show_headers=False, color=False):
        """
        Arguments:
        - show_headers: bool, if True, label each section in the display output.
        - color: bool, if True, color verdicts for a terminal.
        """
        pass

    def reports(self, reports, verbose=False):
        """
        Show the verification report of each class.
        """
        pass

    def validation(self, validation):
        """
        Show the problems found while validating a dataset.
        """
        pass

    def hilbert(self, label, data, numerical):
        """
        Show a Hilbert series with its degree and genus.
        """
        pass

    def point_type(self, label, result):
        """
        Show the classification of one point.
        """
        pass

    def basket_diff(self, number, computed, expected):
        """
        Show a computed basket against the expected one.
        """
        pass

    def list_classes(self, dataset, verbose=False):
        """
        Show the classes of a dataset.
        """
        pass

    def get(self):
        return self.out


class HumanReadableDisplay(Display):
    """
    Format output as a string meant to be human readable.
    """

    def __init__(self, show_headers=False, color=False):
        self.out = ""
        self.show_headers = show_headers
        self.color = color

    def _verdict(self, verdict):
        return helpers.color_verdict(verdict, self.color)

    def reports(self, reports, verbose=False):
        if self.show_headers:
            self.out += "Verification reports:\n"

        for r in reports:
            title = "No.{} in {} [{}]".format(r.number, r.key, r.depth)
            self.out += helpers.text_in_box(title, 52) + "\n"
            self.out += textwrap.indent(self._report_body(r, verbose), "  ") + "\n"

        if len(reports) == 0:
            logging.info("No classes selected.")
            return

        counts = collections.Counter(r.overall() for r in reports)
        summary = ", ".join(
            "{} {}".format(counts[v], self._verdict(v))
            for v in report_module.VERDICTS
            if counts[v]
        )
        self.out += "{} class{}: {}\n".format(len(reports), "" if len(reports) == 1 else "es", summary)

    def _report_body(self, r, verbose):
        out = "Verdict: {}\n".format(self._verdict(r.overall()))
        out += "Claims:  {}\n".format(
            " ".join(
                "{}:{}".format(name, self._verdict(c.verdict)) for name, c in r.claims.items()
            )
        )
        if r.ambient is not None:
            out += "Ambient: P({})\n".format(",".join(str(w) for w in r.ambient))

        out += "Checks:\n"
        for check in r.checks:
            out += "  {:<16} {}".format(check.name, self._verdict(check.verdict))
            if check.detail and (verbose or check.verdict != report_module.PASS):
                out += "  {}".format(check.detail)
            out += "\n"

        for claim in r.claims.values():
            if claim.verdict == report_module.SKIPPED and not verbose:
                continue
            out += "Claim {}: {}".format(claim.name, self._verdict(claim.verdict))
            if claim.detail:
                out += " ({})".format(claim.detail)
            out += "\n"
            if claim.seeds:
                out += "  seeds: {}\n".format(
                    ", ".join("{}={}".format(s, v) for s, v in claim.seeds.items())
                )
            for chart in claim.charts:
                if not verbose and chart.verdict == report_module.PASS and not chart.points:
                    continue
                out += "  {}\n".format(chart)
                for point in chart.points:
                    out += "    {}\n".format(point)

        if r.basket is not None:
            out += "Basket:   {}\n".format(r.basket)
            missing, extra = r.basket_diff()
            if len(missing) or len(extra):
                out += "Expected: {}\n".format(r.expected_basket)
                out += "  missing {}\n  extra   {}\n".format(missing, extra)
        elif verbose:
            out += "Expected basket: {}\n".format(r.expected_basket)

        if r.numerical:
            out += "Numerical data:\n"
            for k, v in r.numerical.items():
                out += "  {:<12} {}\n".format(k, v)
        return out

    def validation(self, validation):
        self.out += "{}\n".format(validation)

    def hilbert(self, label, data, numerical):
        if self.show_headers:
            self.out += "Hilbert series of {}:\n".format(label)
        self.out += "  {}\n".format(data)
        for k, v in numerical.items():
            self.out += "  {:<12} {}\n".format(k, v)

    def point_type(self, label, result):
        self.out += "{}: {}\n".format(label, result)

    def basket_diff(self, number, computed, expected):
        missing, extra = computed.symmetric_difference(expected)
        verdict = report_module.PASS if not len(missing) and not len(extra) else report_module.FAIL
        self.out += "No.{}: {}\n".format(number, self._verdict(verdict))
        self.out += "  computed {}\n  expected {}\n".format(computed, expected)
        if verdict == report_module.FAIL:
            self.out += "  missing  {}\n  extra    {}\n".format(missing, extra)

    def list_classes(self, dataset, verbose=False):
        if self.show_headers:
            self.out += "Classes:\n"
        for record in dataset.records.values():
            self.out += "No.{:<6} {:<8} {}".format(record.number, record.key, record.ambient_string())
            if verbose:
                self.out += "  {}  {}".format(record.profile_string(), record.basket)
                if record.table is not None:
                    self.out += "  [{} table, {}]".format(record.table.level, record.table.source)
            self.out += "\n"


class JSONDisplay(Display):
    """
    Format output as JSON.
    """

    def __init__(self, show_headers=False, color=False):
        self.object = collections.OrderedDict()

    def reports(self, reports, verbose=False):
        self.object["reports"] = [r.object() for r in reports]

    def validation(self, validation):
        self.object["validation"] = validation.object()

    def hilbert(self, label, data, numerical):
        out = collections.OrderedDict([("label", label)])
        out.update(data.object())
        out.update(numerical)
        self.object.setdefault("hilbert", []).append(out)

    def point_type(self, label, result):
        self.object.setdefault("points", []).append(
            collections.OrderedDict([("label", label), ("type", result.object())])
        )

    def basket_diff(self, number, computed, expected):
        missing, extra = computed.symmetric_difference(expected)
        self.object.setdefault("baskets", []).append(
            collections.OrderedDict(
                [
                    ("number", number),
                    ("computed", computed.object()),
                    ("expected", expected.object()),
                    ("missing", missing.object()),
                    ("extra", extra.object()),
                ]
            )
        )

    def list_classes(self, dataset, verbose=False):
        self.object["classes"] = [
            r.object() if verbose else {"number": r.number, "key": r.key, "ambient": r.ambient}
            for r in dataset.records.values()
        ]

    def get(self):
        return json.dumps(self.object, indent=2)


class TOMLDisplay(JSONDisplay):
    """
    Format output as TOML, the format of the dataset files.
    """

    def get(self):
        return toml.dumps(self.object)
