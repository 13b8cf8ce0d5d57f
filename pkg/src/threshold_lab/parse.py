# SPDX-License-Identifier: Apache-2.0

"""Reading of input files with limited error handling."""

from pathlib import Path
import logging

from threshold_lab.errors import ParseError

def parse_text_file(tfile):
    """Read a UTF-8 text file."""

    try:
        with open(tfile, encoding='utf-8') as data:
            return data.read()
    except (IOError, UnicodeDecodeError) as err:
        logging.debug("%s", err)
        raise ParseError(f"Can't load text file '{tfile}' in {Path.cwd()}") from None
