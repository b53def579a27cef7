"""
Artifact storage

Pipelines produce certificates, match transcripts, covers and sweep
tables. `Logger` decides where these land on disk and writes them with
rationals kept exact; `jsonify` is the single conversion used by every
`to_json` method and by the writers below.
"""

import csv
import enum
import json
import os
import time

from fractions import Fraction

import numpy as np
import pandas as pd

from schmidtools.arith.rational import rational_to_json


STYLES = {"print:datetime": "%Y-%m-%d %H:%M:%S",
          "save:float": "% .8g",
          "save:indent": 4
          }

_NUMPY_SCALARS = ((np.integer, int), (np.floating, float), (np.bool_, bool))


def jsonify(data):
    """
    Turn a result into plain JSON values.

    Fractions are written "p/q", enums by value; anything exposing
    `to_json` is expanded recursively.
    """

    if data is None or isinstance(data, (bool, str)):
        return data
    if isinstance(data, Fraction):
        return rational_to_json(data)
    if isinstance(data, dict):
        return {str(key): jsonify(value) for key, value in data.items()}
    if isinstance(data, (tuple, list, np.ndarray)):
        return [jsonify(value) for value in data]
    if isinstance(data, enum.Enum):
        return data.value

    for kind, cast in _NUMPY_SCALARS:
        if isinstance(data, kind):
            return cast(data)

    if hasattr(data, "to_json"):
        return jsonify(data.to_json())

    return data


class Logger:
    """
    Place and write run artifacts.

    A logger is bound to an output directory. Each file can be stamped with
    the time of the run, either inside its name or as an extra folder
    level; the stamp is frozen when the logger is built so that all the
    files of one run share it.

    Attributes:
        path (str): absolute output directory.
        logtime (str): stamp of the current run.
        styles (dict): formatting options, copied from `STYLES`.
    """

    styles = STYLES

    def __init__(self, path="", prefix="", suffix="", logtime="filename",
                 logtime_fmt="%Y-%m-%d-%H%M%S"):
        """
        Args:
            path (str): output directory, relative paths are resolved now.
            prefix (str): added in front of every file name.
            suffix (str): added at the end of every file name, before the
                extension.
            logtime (str): where the stamp goes: "filename", "folder", both
                (e.g. "folder+filename") or neither (empty string).
            logtime_fmt (str): `time.strftime` format of the stamp.
        """

        self.styles = dict(STYLES)

        self.path = os.path.abspath(path)
        self.prefix = prefix
        self.suffix = suffix

        self.stamp_name = "filename" in logtime
        self.stamp_folder = "folder" in logtime

        self.logtime_fmt = logtime_fmt
        self.reset_time()

    def __repr__(self):
        return "<Logger: {}, stamp {}>".format(self.path, self.logtime)

    def reset_time(self, logtime=None):
        self.logtime = logtime or time.strftime(self.logtime_fmt)

    def logtime_text(self, fmt=None):
        stamp = time.strptime(self.logtime, self.logtime_fmt)
        return time.strftime(fmt or self.styles["print:datetime"], stamp)

    @staticmethod
    def inserttofilename(path, prefix="", suffix=""):
        """
        Wrap the base name of `path` between `prefix` and `suffix`, keeping
        its folder and extension.
        """

        folder, name = os.path.split(path)
        stem, ext = os.path.splitext(name)

        return os.path.join(folder, "".join((prefix, stem, suffix, ext)))

    @staticmethod
    def format_time(t):
        """
        Human readable duration from seconds.
        """

        if t < 60:
            return "{:.3f} s".format(t)

        hours, rest = divmod(t, 3600)
        minutes, seconds = divmod(rest, 60)

        if hours == 0:
            return "{:2.0f} m {:2.0f} s".format(minutes, seconds)
        return "{:.0f} h {:2.0f} m {:2.0f} s".format(hours, minutes, seconds)

    def expandpath(self, filename="", logtime=False):
        """
        Resolve where `filename` is written.

        Relative names are taken under `path`. With `logtime` the stamp is
        applied as configured; without it the stamp is skipped. Missing
        folders are created.

        Returns:
            str: absolute file path.
        """

        folder, name = os.path.split(filename)
        if not os.path.isabs(folder):
            folder = os.path.join(self.path, folder)
        if logtime and self.stamp_folder:
            folder = os.path.join(folder, self.logtime)

        suffix = self.suffix
        if logtime and self.stamp_name:
            suffix += "-" + self.logtime

        filepath = self.inserttofilename(os.path.join(os.path.normpath(folder), name),
                                         self.prefix, suffix)

        os.makedirs(os.path.dirname(filepath), exist_ok=True)

        return filepath

    def _target(self, filename, logtime):
        # writers silently skip when no name is given
        return self.expandpath(filename, logtime) if filename else None

    def save_text(self, text, filename="", logtime=True):
        filepath = self._target(filename, logtime)

        if filepath is not None:
            with open(filepath, "w") as f:
                f.write(text)

        return filepath

    def save_json(self, data, filename="", logtime=True):
        filepath = self._target(filename, logtime)

        if filepath is not None:
            with open(filepath, "w") as f:
                json.dump(jsonify(data), f, indent=self.styles["save:indent"])
                f.write("\n")

        return filepath

    def save_csv(self, data, sep="\t", float_fmt=None, filename="", logtime=True):
        """
        Write a table.

        A dict of columns or a dataframe goes through pandas with rationals
        as "p/q" strings; a list of rows is written as is.
        """

        filepath = self._target(filename, logtime)
        if filepath is None:
            return None

        if isinstance(data, dict):
            data = pd.DataFrame({col: jsonify(list(values)) for col, values in data.items()})

        if isinstance(data, (pd.DataFrame, pd.Series)):
            data.to_csv(filepath, sep=sep, index=False,
                        float_format=float_fmt or self.styles["save:float"])
        elif isinstance(data, (tuple, list)):
            with open(filepath, "w", newline="") as f:
                csv.writer(f, delimiter=sep).writerows(jsonify(data))
        else:
            raise TypeError("Cannot write `{}` as a table.".format(type(data).__name__))

        return filepath

    @staticmethod
    def load_json(filename):
        with open(filename) as f:
            return json.load(f)

    @staticmethod
    def dict_to_text(dic, sep=" ="):
        """
        Render a (nested) dict as an indented bullet list.
        """

        lines = []

        for key, value in dic.items():
            if isinstance(value, dict):
                lines.append("- {}".format(key))
                lines.extend("\t" + line for line in Logger.dict_to_text(value, sep).split("\n"))
            else:
                lines.append("- {}{} {}".format(key, sep, jsonify(value)))

        return "\n".join(lines)
