# SPDX-License-Identifier: Apache-2.0

"""Jinja templates."""

import jinja2
from jinja2 import select_autoescape

PACKAGE = 'threshold_lab'
TEMPLATES = 'templates'

COVER_TEMPLATE = 'cover.jinja.txt'
LAMBDA_TEMPLATE = 'lambda.jinja.txt'
AUDIT_TEMPLATE = 'audit.jinja.html'

ENV = None

def env():
    """The jinja environment."""

    # pylint: disable=global-statement
    global ENV

    if ENV is None:
        ENV = jinja2.Environment(
            loader=jinja2.PackageLoader(PACKAGE, TEMPLATES),
            autoescape=select_autoescape(
                enabled_extensions=('html',),
                default_for_string=False),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True
        )
    return ENV

def render_cover(p, weight, sets):
    """Render a cover certificate as text."""

    return env().get_template(COVER_TEMPLATE).render(
        p=p, weight=weight, sets=sets
    )

def render_lambda(p, r, weight, entries):
    """Render a lambda certificate as text."""

    return env().get_template(LAMBDA_TEMPLATE).render(
        p=p, r=r, weight=weight, entries=entries
    )

def render_audit(instance, checks, passed):
    """Render an audit report as html."""

    return env().get_template(AUDIT_TEMPLATE).render(
        instance=instance, checks=checks, passed=passed
    )
