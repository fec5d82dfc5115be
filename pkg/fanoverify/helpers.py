"""
Various helper functions that fanoverify uses. Mostly for presenting results
to users in a nice way and for parsing command line values.
"""

import argparse
import functools
import logging
import sys

import colorama
import tqdm
from sympy import isprime

STATUS = 25


def register_status_level():
    """
    Add the STATUS log level (between INFO and WARNING) and the
    `logging.status()` shortcut. Safe to call more than once.
    """
    logging.addLevelName(STATUS, "STATUS")
    logging.Logger.status = functools.partialmethod(logging.Logger.log, STATUS)
    logging.status = functools.partial(logging.log, STATUS)


def set_terminal_title(title):
    if sys.stdout.isatty():
        sys.stdout.write(colorama.ansi.set_title(title))
        sys.stdout.flush()


def plural(value):
    """
    Return '' or 's' based on whether the `value` means a string should have
    a plural word.

    `value` can be a list or a number. If the number or the length of the list
    is 1, then '' will be returned. Otherwise 's'.
    """
    try:
        value = len(value)
    except TypeError:
        pass
    if value == 1:
        return ""
    else:
        return "s"


VERDICT_COLORS = {
    "pass": colorama.Fore.GREEN,
    "fail": colorama.Fore.RED,
    "inconclusive": colorama.Fore.YELLOW,
    "skipped": colorama.Style.DIM,
}


def color_verdict(verdict, color=True):
    """
    `verdict` wrapped in the ANSI color for it, if `color`.
    """
    if not color or verdict not in VERDICT_COLORS:
        return verdict
    return "{}{}{}".format(VERDICT_COLORS[verdict], verdict, colorama.Style.RESET_ALL)


def text_in_box(string, box_width, box_height=3):
    """
    Return a string like:
    ```
    ┌───────────────┐
    │ str           │
    └───────────────┘
    ```
    """
    string_len = box_width - 4
    truncated_str = (
        (string[: string_len - 3] + "...") if len(string) > string_len else string
    )

    vertical_padding = max(box_height - 3, 0)
    vertical_padding_top = vertical_padding // 2
    vertical_padding_bottom = vertical_padding - vertical_padding_top

    out = "┌{}┐\n".format("─" * (box_width - 2))
    for i in range(0, vertical_padding_top):
        out += "│ {} │\n".format(" " * string_len)
    out += "│ {} │\n".format(truncated_str.ljust(string_len))
    for i in range(0, vertical_padding_bottom):
        out += "│ {} │\n".format(" " * string_len)
    out += "└{}┘".format("─" * (box_width - 2))
    return out


def progress(iterable, description, quiet=False, total=None):
    """
    Wrap `iterable` in a tqdm progress bar on stderr. The bar is hidden
    when `quiet` or when stderr is not a terminal.
    """
    return tqdm.tqdm(
        iterable,
        desc=description,
        total=total,
        leave=False,
        file=sys.stderr,
        disable=quiet or not sys.stderr.isatty(),
    )


################################################################################
## Argument types
################################################################################


def integer_list(text):
    """
    argparse type for `1,2,3`.
    """
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("'{}' is not a comma separated list of integers".format(text))
    if not values:
        raise argparse.ArgumentTypeError("Expected at least one integer")
    return values


def prime(text):
    """
    argparse type for a field characteristic.
    """
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError("'{}' is not an integer".format(text))
    if not isprime(value):
        raise argparse.ArgumentTypeError("{} is not prime".format(value))
    return value


def setting_value(text):
    """
    Best-effort conversion of a `--set key=value` value: int, bool, or the
    string itself.
    """
    lowered = text.lower()
    if lowered in ("true", "yes", "on"):
        return True
    if lowered in ("false", "no", "off"):
        return False
    try:
        return int(text, 0)
    except ValueError:
        pass
    if "," in text:
        return [setting_value(part) for part in text.split(",") if part]
    return text


class ListToDictAction(argparse.Action):
    """
    `argparse` action to convert `[['key', 'val'], ['key2', 'val2']]` to
    `{'key': 'val', 'key2': 'val2'}`, with the values converted by
    `setting_value()`.

    Empty entries are dropped and a key without a value maps to True.
    """

    def __call__(self, parser, namespace, values, option_string=None):
        # Remove any empty values.
        values = list(filter(None, values))
        values = list(filter(lambda x: len(x[0]), values))

        settings = dict(getattr(namespace, self.dest, None) or {})
        for item in values:
            if len(item) == 1:
                settings[item[0]] = True
            else:
                settings[item[0]] = setting_value(item[1])
        setattr(namespace, self.dest, settings)
