#!/usr/bin/env python3

"""
### Main command line interface for fanoverify.

Each `fanoverify` command is mapped to a function which loads the dataset,
runs the matching `Verifier` (or library) operation and hands the result to
a display. The process exit status is 0 when everything passed, 1 when
anything failed, 2 when something was inconclusive and 3 on usage or I/O
errors.
"""

import argparse
import atexit
import collections
import logging
import sys

import argcomplete
import toml

from . import display
from . import helpers
from . import hilbert
from . import report
from .dataset import load_dataset, validate_dataset
from .exceptions import FanoVerifyException
from .pipeline import Verifier
from .poly import CoordinateRing
from .singularity import (
    Basket,
    LocalizedSystem,
    LPCFailure,
    NotQuasiSmooth,
    lift_point,
    lpc_classify,
)
from .wps import WeightedSpace
from ._version import __version__

USAGE_EXIT_CODE = 3


class ArgumentParser(argparse.ArgumentParser):
    """
    Exits with the usage code on bad arguments, keeping 2 for inconclusive
    verdicts.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT_CODE, "{}: error: {}\n".format(self.prog, message))


def get_display(args):
    """
    Display object for `--output-format`.
    """
    fmt = getattr(args, "output_format", "text")
    if fmt == "json":
        return display.JSONDisplay()
    if fmt == "toml":
        return display.TOMLDisplay()
    return display.HumanReadableDisplay(show_headers=False, color=sys.stdout.isatty())


def open_dataset(args):
    return load_dataset(args.dataset, validate=not getattr(args, "no_validate", False))


def selected_classes(args):
    """
    Class numbers chosen with `--class`, or None for `--all`.
    """
    if getattr(args, "all", False):
        return None
    if not getattr(args, "classes", None):
        raise FanoVerifyException("Select classes with --class N or --all")
    return args.classes


def verifier_overrides(args):
    """
    Command line settings, the last layer applied by the `Verifier`.
    """
    overrides = dict(getattr(args, "settings", None) or {})
    if getattr(args, "seeds", None) is not None:
        overrides["seeds"] = args.seeds
    if getattr(args, "characteristic", None) is not None:
        overrides["characteristic"] = args.characteristic
    return overrides


def finish(out, verdicts):
    print(out.get())
    sys.exit(report.exit_code(verdicts))


################################################################################
## Command Functions
################################################################################


def command_table_check(args):
    dataset = open_dataset(args)
    verifier = Verifier(dataset, verifier_overrides(args), quiet=args.quiet)

    logging.status("Checking section tables...")
    reports = verifier.verify(selected_classes(args), depth="tables-only")

    out = get_display(args)
    out.reports(reports, args.verbose)
    finish(out, [r.overall() for r in reports])


def command_verify(args):
    dataset = open_dataset(args)
    verifier = Verifier(dataset, verifier_overrides(args), quiet=args.quiet)

    reports = verifier.verify(selected_classes(args), depth=args.depth)

    out = get_display(args)
    out.reports(reports, args.verbose)
    finish(out, [r.overall() for r in reports])


def command_validate(args):
    dataset = load_dataset(args.dataset, validate=False)
    validation = validate_dataset(dataset, None if args.all or not args.classes else args.classes)

    out = get_display(args)
    out.validation(validation)
    finish(out, [report.PASS if validation.ok() else report.FAIL])


def command_hilbert(args):
    out = get_display(args)

    if args.ci is not None:
        if args.weights is None:
            raise FanoVerifyException("--ci needs the ambient --weights")
        label = "X_{} in P({})".format(
            ",".join(str(d) for d in args.ci), ",".join(str(w) for w in args.weights)
        )
        items = [(label, hilbert.ci_hilbert(args.ci, args.weights))]
    else:
        dataset = open_dataset(args)
        items = []
        for record in dataset.select(selected_classes(args)):
            key = dataset.key_for(record)
            if key.numerator is None:
                logging.warning(
                    "Key {} has no Hilbert numerator; skipping class {}".format(
                        key.name, record.number
                    )
                )
                continue
            numerator = hilbert.section_numerator(key.numerator, record.profile)
            items.append(
                ("No.{}".format(record.number), hilbert.HilbertData(numerator, key.weights_for(record)))
            )

    for label, data in items:
        series = data.expand(args.terms)
        g, flagged = hilbert.genus(series)
        numerical = collections.OrderedDict()
        numerical["degree"] = report.fraction_string(data.anticanonical_degree())
        numerical["genus"] = g
        if flagged:
            numerical["genus_flag"] = "h0(-K) is zero"
        numerical["series"] = series
        out.hilbert(label, data, numerical)

    print(out.get())


def read_point_system(path):
    """
    Read a point classification problem. Either the point is given on an
    affine chart with the residual action spelled out:

    ```
    characteristic = 11
    coordinates = ["x1", "x2", "x3", "x4"]
    residuals = [2, 3, 1, 4]
    index = 5
    dimension = 2
    equations = ["x3 + x1*x2", "x4 - x1^2"]

    [point]
    x1 = 0
    ```

    or as a projective point with the ambient `weights` and a `chart`
    coordinate instead of `residuals` and `index`. The point is then lifted
    to the chart, over an extension of GF(p) if needed, and the action is
    the residual action of the chart.

    Coordinates missing from `[point]` are zero. In the first form
    `weights` (the ring weights) default to the residuals.
    """
    try:
        with open(path) as f:
            obj = toml.load(f)
    except (OSError, toml.TomlDecodeError) as e:
        raise FanoVerifyException("Cannot read point system {}: {}".format(path, e))

    try:
        names = obj["coordinates"]
        dimension = int(obj["dimension"])
        equations = obj["equations"]
    except KeyError as e:
        raise FanoVerifyException("Point system {} is missing {}".format(path, e))
    label = obj.get("label", path)
    characteristic = int(obj.get("characteristic", 11))

    if "chart" in obj:
        return _projective_point_system(obj, names, equations, characteristic, label), dimension

    try:
        residuals = obj["residuals"]
        index = int(obj["index"])
    except KeyError as e:
        raise FanoVerifyException("Point system {} is missing {}".format(path, e))
    if len(residuals) != len(names):
        raise FanoVerifyException("Point system needs one residual per coordinate")

    weights = obj.get("weights") or [max(int(r), 1) for r in residuals]
    ring = CoordinateRing(names, weights, characteristic)
    field = ring.field()
    point = {n: field(obj.get("point", {}).get(n, 0)) for n in names}
    system = LocalizedSystem.from_equations(
        ring,
        [ring.parse(e) for e in equations],
        point,
        field,
        dict(zip(names, residuals)),
        index,
        label=label,
    )
    return system, dimension


def _projective_point_system(obj, names, equations, characteristic, label):
    if "weights" not in obj or len(obj["weights"]) != len(names):
        raise FanoVerifyException("A point on a chart needs one weight per coordinate")
    if obj["chart"] not in names:
        raise FanoVerifyException("Unknown chart coordinate '{}'".format(obj["chart"]))
    space = WeightedSpace(names, obj["weights"])
    chart = space.chart_of(obj["chart"])
    ring = CoordinateRing(names, obj["weights"], characteristic)
    field = ring.field()
    point = {n: field(obj.get("point", {}).get(n, 0)) for n in names}

    # All lifts are one orbit of the chart action, so one of them is typed.
    field, representatives = lift_point(chart, point, field)
    lifted = {n: v for n, v in representatives[0].items() if n != chart.coordinate}
    logging.info(
        "Lifted the point to {} representatives over {}".format(len(representatives), field)
    )

    chart_ring = ring.without([chart.coordinate])
    polys = [
        ring.substitute(ring.parse(e), {chart.coordinate: 1}, chart_ring) for e in equations
    ]
    nonzero = [n for n, v in lifted.items() if not field.is_zero(v)]
    return LocalizedSystem.from_equations(
        chart_ring,
        polys,
        lifted,
        field,
        chart.residuals,
        chart.stabilizer_order(nonzero),
        label=label,
    )


def command_lpc(args):
    out = get_display(args)
    verdicts = []
    for path in args.system:
        system, dimension = read_point_system(path)
        result = lpc_classify(system, dimension)
        out.point_type(system.label, result)
        if isinstance(result, NotQuasiSmooth):
            verdicts.append(report.FAIL)
        elif isinstance(result, LPCFailure):
            verdicts.append(report.INCONCLUSIVE)
        else:
            verdicts.append(report.PASS)
    finish(out, verdicts)


def command_basket(args):
    dataset = open_dataset(args)
    out = get_display(args)
    verdicts = []

    if args.compute:
        overrides = verifier_overrides(args)
        overrides["depth"] = "full"
        verifier = Verifier(dataset, overrides, quiet=args.quiet)
        for r in verifier.verify(selected_classes(args)):
            if r.basket is None:
                logging.warning("No basket computed for class {}".format(r.number))
                verdicts.append(report.SKIPPED)
                continue
            out.basket_diff(r.number, r.basket, r.expected_basket)
            verdicts.append(report.combine([r.claims["B"].verdict]))
    else:
        # Tables only: the basket implied by the printed findings.
        for record in dataset.select(selected_classes(args)):
            if not record.findings:
                logging.info("Class {} lists no findings".format(record.number))
                verdicts.append(report.SKIPPED)
                continue
            computed = Basket()
            for finding in record.findings:
                computed.add(finding.singularity.promote(), finding.count)
            out.basket_diff(record.number, computed, record.basket)
            missing, extra = computed.symmetric_difference(record.basket)
            verdicts.append(report.PASS if not len(missing) and not len(extra) else report.FAIL)

    finish(out, verdicts)


def command_list_classes(args):
    dataset = open_dataset(args)
    out = get_display(args)
    out.list_classes(dataset, args.verbose)
    print(out.get())


################################################################################
## Setup and parse command line arguments
################################################################################


def main():
    """
    Read in command line arguments and call the correct command function.
    """

    # Cleanup any title the program may set
    atexit.register(helpers.set_terminal_title, "")

    # Setup logging for displaying background information to the user.
    logging.basicConfig(
        style="{", format="[{levelname:<7}] {message}", level=logging.INFO
    )
    helpers.register_status_level()

    # Create a common parent parser for arguments shared by all subparsers.
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--debug", action="store_true", help="Print additional debugging information"
    )
    parent.add_argument(
        "--version",
        action="version",
        version=__version__,
        help="Print fanoverify version and exit",
    )

    # Get the list of arguments before any command
    before_command_args = parent.parse_known_args()

    # The top-level parser object
    parser = ArgumentParser(parents=[parent])

    # Parser for everything that reads the dataset
    parent_dataset = argparse.ArgumentParser(add_help=False)
    parent_dataset.add_argument(
        "--dataset",
        help="Dataset directory (default: $FANOVERIFY_DATASET or the shipped data)",
    )
    parent_dataset.add_argument(
        "--no-validate",
        action="store_true",
        help="Do not cross-check the dataset when loading it",
    )

    parent_select = argparse.ArgumentParser(add_help=False)
    parent_select.add_argument(
        "--class",
        dest="classes",
        type=int,
        action="append",
        metavar="N",
        help="Class number to work on. Can be repeated",
    )
    parent_select.add_argument(
        "--all", action="store_true", help="Work on every class of the dataset"
    )

    parent_format = argparse.ArgumentParser(add_help=False)
    parent_format.add_argument(
        "--output-format",
        help="How to print results",
        choices=["text", "json", "toml"],
        default="text",
    )
    parent_format.add_argument(
        "--verbose", "-v", help="Print more information", action="store_true"
    )
    parent_format.add_argument(
        "--quiet",
        "-q",
        help="Hide progress bars and status messages",
        action="store_true",
    )

    # Parser for the knobs of the verifier
    parent_settings = argparse.ArgumentParser(add_help=False)
    parent_settings.add_argument(
        "--seeds",
        type=helpers.integer_list,
        help="Comma separated seeds for the random section parameters",
    )
    parent_settings.add_argument(
        "--characteristic",
        "-p",
        type=helpers.prime,
        help="Prime characteristic of the base field",
    )
    parent_settings.add_argument(
        "--set",
        dest="settings",
        type=lambda kv: kv.split("=", 1),
        nargs="*",
        default={},
        action=helpers.ListToDictAction,
        metavar="KEY=VALUE",
        help="Override a verifier setting, e.g. claim_c_mode=base-loci",
    )

    # Support multiple commands for this tool
    subparser = parser.add_subparsers(
        title="Commands", metavar="                    ", dest="command"
    )

    table_check = subparser.add_parser(
        "table-check",
        parents=[parent, parent_dataset, parent_select, parent_format, parent_settings],
        help="Check ambient weights, embeddings and profiles without equations",
    )
    table_check.set_defaults(func=command_table_check)

    verify = subparser.add_parser(
        "verify",
        parents=[parent, parent_dataset, parent_select, parent_format, parent_settings],
        help="Run the table checks and Claims A, B and C",
    )
    verify.set_defaults(func=command_verify)
    verify.add_argument(
        "--depth",
        choices=Verifier.DEPTHS,
        help="Run only table checks or also the Groebner backed claims",
    )

    validate = subparser.add_parser(
        "validate",
        parents=[parent, parent_dataset, parent_select, parent_format],
        help="Cross-check the dataset files and report every problem",
    )
    validate.set_defaults(func=command_validate)

    hilbert_cmd = subparser.add_parser(
        "hilbert",
        parents=[parent, parent_dataset, parent_select, parent_format],
        help="Hilbert series, degree and genus of a class or a complete intersection",
    )
    hilbert_cmd.set_defaults(func=command_hilbert)
    hilbert_cmd.add_argument(
        "--ci",
        type=helpers.integer_list,
        help="Degrees of a weighted complete intersection, e.g. 6",
    )
    hilbert_cmd.add_argument(
        "--weights",
        type=helpers.integer_list,
        help="Ambient weights for --ci, e.g. 1,1,1,1,3",
    )
    hilbert_cmd.add_argument(
        "--terms", type=int, default=12, help="Number of series coefficients to show"
    )

    lpc = subparser.add_parser(
        "lpc",
        parents=[parent, parent_format],
        help="Classify the point of a localized system file",
    )
    lpc.set_defaults(func=command_lpc)
    lpc.add_argument("system", nargs="+", help="TOML file describing the system")

    basket = subparser.add_parser(
        "basket",
        parents=[parent, parent_dataset, parent_select, parent_format, parent_settings],
        help="Compare the basket of a class with the expected one",
    )
    basket.set_defaults(func=command_basket)
    basket.add_argument(
        "--compute",
        action="store_true",
        help="Compute the basket from equations instead of the printed findings",
    )

    list_classes = subparser.add_parser(
        "list-classes",
        parents=[parent, parent_dataset, parent_format],
        help="List the classes of the dataset",
    )
    list_classes.set_defaults(func=command_list_classes)

    ############################
    # END OF OPTIONS/COMMANDS ##
    ############################

    argcomplete.autocomplete(parser)
    args, unknown_args = parser.parse_known_args()

    if len(unknown_args) > 0:
        for unknown_arg in unknown_args:
            logging.error('Unknown argument "{}"'.format(unknown_arg))
        sys.exit(USAGE_EXIT_CODE)

    # Concat the args before the command with those that were specified
    # after the command.
    for key, value in vars(before_command_args[0]).items():
        if getattr(args, key) != value:
            setattr(args, key, value)

    # Change logging level if `--debug` was supplied.
    if args.debug:
        logging.getLogger("").setLevel(logging.DEBUG)
    elif getattr(args, "quiet", False):
        logging.getLogger("").setLevel(logging.WARNING)

    if hasattr(args, "func"):
        try:
            args.func(args)
        except FanoVerifyException as e:
            logging.error(e)
            sys.exit(USAGE_EXIT_CODE)
    else:
        logging.error("Missing Command.\n")
        parser.print_help()
        sys.exit(USAGE_EXIT_CODE)


if __name__ == "__main__":
    main()
