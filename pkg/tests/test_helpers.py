"""Tests for command line helpers."""

import argparse
import logging

import pytest

from fanoverify import helpers


class TestArgumentTypes:
    def test_integer_list(self):
        assert helpers.integer_list("1,2,3") == [1, 2, 3]
        with pytest.raises(argparse.ArgumentTypeError):
            helpers.integer_list("1,x")
        with pytest.raises(argparse.ArgumentTypeError):
            helpers.integer_list(",")

    def test_prime(self):
        assert helpers.prime("101") == 101
        with pytest.raises(argparse.ArgumentTypeError):
            helpers.prime("100")

    def test_setting_value(self):
        assert helpers.setting_value("yes") is True
        assert helpers.setting_value("0x10") == 16
        assert helpers.setting_value("1,2") == [1, 2]
        assert helpers.setting_value("base-loci") == "base-loci"

    def test_list_to_dict(self):
        parser = argparse.ArgumentParser()
        parser.add_argument(
            "--set",
            dest="settings",
            type=lambda kv: kv.split("=", 1),
            nargs="*",
            default={},
            action=helpers.ListToDictAction,
        )
        args = parser.parse_args(["--set", "max_pairs=10", "u_point_truncation", "--set", "depth=full"])
        assert args.settings == {"max_pairs": 10, "u_point_truncation": True, "depth": "full"}


class TestPresentation:
    def test_plural(self):
        assert helpers.plural(1) == ""
        assert helpers.plural([1, 2]) == "s"

    def test_color(self):
        assert helpers.color_verdict("pass", color=False) == "pass"
        assert "fail" in helpers.color_verdict("fail")
        assert helpers.color_verdict("fail") != "fail"

    def test_box(self):
        box = helpers.text_in_box("No.393", 20).splitlines()
        assert len(box) == 3
        assert all(len(line) == 20 for line in box)

    def test_status_level(self, caplog):
        helpers.register_status_level()
        with caplog.at_level(logging.INFO):
            logging.status("working")
        assert caplog.records[-1].levelname == "STATUS"
