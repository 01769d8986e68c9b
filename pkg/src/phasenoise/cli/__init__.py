# flake8: noqa
# nopycln: file
from phasenoise.cli.core import main
