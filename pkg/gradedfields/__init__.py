# -*- coding: utf-8 -*-
"""Exact algebra of Z2-graded field operators, with verification suites.

The building blocks live in their own modules (:mod:`gradedfields.graded`,
:mod:`gradedfields.fields`, :mod:`gradedfields.brst`, ...). Runs are driven by
:func:`gradedfields.suites.run_verify` or the ``gradedfields`` command.

To register a run configuration from pyramid settings, include the package::

  config.include('gradedfields')

and read it back with ``config.registry.getUtility(IRunConfig)``. Settings use
the keys of :mod:`gradedfields.config` under the ``gradedfields.`` prefix,
e.g. ``gradedfields.theory.lie = su3``.
"""

__version__ = "0.1.0"

__all__ = [
    "includeme",
    "register_run_config",
]

import logging

from pyramid.config import Configurator
from pyramid.settings import asbool

from gradedfields.config import RunConfig
from gradedfields.interfaces import IRunConfig

logger = logging.getLogger(__name__)

SETTINGS_PREFIX = "gradedfields."


def register_run_config(config: Configurator, run_config: RunConfig) -> None:
    """Register ``run_config`` as the :class:`IRunConfig` utility."""
    config.registry.registerUtility(run_config, IRunConfig)
    logger.debug("Registered run configuration for %s", run_config.lie)


def includeme(config: Configurator) -> None:
    """Build a :class:`RunConfig` from ``config.registry.settings``.

    Registration can be switched off with ``gradedfields.register = false``.
    """
    settings = config.get_settings()
    if not asbool(settings.get(f"{SETTINGS_PREFIX}register", True)):
        return
    run_config = RunConfig.from_mapping(settings, SETTINGS_PREFIX)
    config.action(IRunConfig, register_run_config, (config, run_config))
