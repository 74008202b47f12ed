from .base import BaseCommand
from .maxent import CkCommand, DecomposeCommand, MultiInfoCommand, ProjectCommand
from .models import BasisCommand, DimsCommand
from .factorization import FeasibilityCommand, ToricCommand
from .maximizers import MaximizeCommand
from .two_qubit import BellCommand, Fig1Command, Theorem1Command
from .demo import DemoCommand

__all__ = ["BaseCommand", "COMMANDS", "get_command"]


COMMANDS: list[type[BaseCommand]] = [
    ProjectCommand,
    CkCommand,
    DecomposeCommand,
    MultiInfoCommand,
    DimsCommand,
    BasisCommand,
    FeasibilityCommand,
    ToricCommand,
    MaximizeCommand,
    BellCommand,
    Theorem1Command,
    Fig1Command,
    DemoCommand,
]


def get_command(name: str) -> type[BaseCommand] | None:
    for command in COMMANDS:
        if command.name == name:
            return command
    return None
