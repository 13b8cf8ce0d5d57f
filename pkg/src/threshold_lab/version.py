# SPDX-License-Identifier: Apache-2.0

"""Version number."""

NAME = "threshold-lab"
NUMBER = "1.0"
VERSION = f"{NAME} {NUMBER}"

def version(display=False):
    """The version of threshold-lab."""

    if display:
        print(VERSION)
    return VERSION
