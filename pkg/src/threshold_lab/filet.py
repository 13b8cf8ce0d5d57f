# SPDX-License-Identifier: Apache-2.0

"""The known file types."""

import enum
import logging
import os

################################################################

class File(enum.Enum):
    """The known file types."""

    FAMILY = 1
    LAMBDA = 2
    CSV = 3
    JSON = 4
    HTML = 5
    TEXT = 6

def filetype(filename):
    """Return the file type denoted by the filename extension."""

    if filename is None:
        return None

    if not isinstance(filename, str):
        raise UserWarning(f"Filename is not a string: {filename}")

    # The filename extension: expected to be one of fam, lam, csv, json, html, or txt
    file_extension = os.path.splitext(filename)[1].lower().lstrip('.')

    try:
        return {
            'fam': File.FAMILY,
            'lam': File.LAMBDA,
            'csv': File.CSV,
            'json': File.JSON,
            'html': File.HTML,
            'txt': File.TEXT,
            'cert': File.TEXT
        }[file_extension]
    except KeyError:
        raise UserWarning(
            f"Can't determine file type of file {filename}"
        ) from None # squash the KeyError context, raise just a UserWarning

################################################################

def is_filetype(filename, kind):
    """File has the given type, unknown extensions included."""

    try:
        return filetype(filename) == kind
    except UserWarning:
        return False

def warn_unexpected_filetype(filenames, kind):
    """Warn about input files whose extension does not name their type."""

    for filename in filenames or []:
        if not is_filetype(filename, kind):
            logging.warning("Expected a %s file, found %s",
                            kind.name.lower(), filename)

def name(filename):
    """The short name of a file used in tables: the base name without extension."""

    return os.path.splitext(os.path.basename(filename))[0]
