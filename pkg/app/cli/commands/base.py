import argparse
import inspect
from pathlib import Path
from typing import Annotated, ClassVar

from pydantic import BaseModel, BeforeValidator

from app.algebra import SystemShape, UnitKind
from app.io import parse_shape, read_shape

from ..types import CommandName, CommandResult


def _split(value):
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


# comma separated on the command line, e.g. --t 0.1,0.2,0.3
FloatList = Annotated[list[float], BeforeValidator(_split)]
IntList = Annotated[list[int], BeforeValidator(_split)]


def load_shape(value: str, quantum: bool = False) -> SystemShape:
    """A shape file, or an inline '2,2,2' / 'q2,c3' description."""
    if value.endswith(".json") or Path(value).is_file():
        return read_shape(value)
    return parse_shape(value, UnitKind.QUANTUM if quantum else UnitKind.CLASSICAL)


class BaseCommand(BaseModel):
    """
    One CLI command. Fields are the command's own arguments; shared run
    settings (seed, options, units, output path) arrive through the run
    context and are passed to __call__ by parameter name.
    """

    name: ClassVar[CommandName]
    help: ClassVar[str] = ""
    # field name -> flag, for flags that are not valid field names
    flags: ClassVar[dict[str, str]] = {}
    # --out names a CSV export rather than the report file
    exports_csv: ClassVar[bool] = False

    def __call__(self) -> CommandResult:
        raise NotImplementedError

    def run(self, context: dict) -> CommandResult:
        kwargs = self._prepare_kwargs(context)
        return self(**kwargs)

    def _prepare_kwargs(self, kwargs: dict) -> dict:
        spec = inspect.getfullargspec(self.__call__)
        if spec.varkw is not None:
            return kwargs
        params = {*spec.args, *spec.kwonlyargs}
        return {k: kwargs[k] for k in params if k in kwargs}

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        for name, field in cls.model_fields.items():
            flag = cls.flags.get(name, "--" + name.replace("_", "-"))
            if field.annotation is bool:
                parser.add_argument(flag, dest=name, action="store_true", help=field.description)
            else:
                parser.add_argument(flag, dest=name, required=field.is_required(), help=field.description)

    @classmethod
    def arguments_from(cls, namespace: argparse.Namespace) -> dict:
        """Command arguments given on the command line; the rest keep their defaults."""
        return {
            name: value
            for name in cls.model_fields
            if (value := getattr(namespace, name, None)) is not None
        }
