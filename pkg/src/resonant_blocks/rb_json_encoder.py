"""Serialise reports to JSON files, converting domain types and adding hints so the original objects can be recreated."""
import copy
import dataclasses
import enum
import importlib
import json
from fractions import Fraction
from pathlib import Path

from resonant_blocks.rb_lattice import GroupElement
from resonant_blocks.rb_multipoly import MultiPoly


class JSONEncoder:
    """Class to handle encoding and decoding of JSON data with special handling for enumerations, fractions and polynomials."""

    @staticmethod
    def serialise_to_json(data) -> str:
        """Serialises the data to a JSON string, converting as needed.

        Args:
            data (object): The data to prepare.

        Raises:
            RuntimeError: If the data cannot be serialized.

        Returns:
            str: The JSON string representation of the data.
        """
        try:
            save_data = JSONEncoder._add_datatype_hints(JSONEncoder._expand(data))
            json_string = json.dumps(save_data, indent=4, default=JSONEncoder._encode_object)
        except (TypeError, ValueError) as e:
            raise RuntimeError from e
        else:
            return json_string

    @staticmethod
    def save_to_file(data, file_path: Path) -> bool:
        """Saves the data to a JSON file, converting as needed. The file is written to a .tmp file first and then replaced.

        Args:
            data (object): The data to save.
            file_path (Path): The path to the JSON file to be created.

        Raises:
            RuntimeError: If the data cannot be serialized.

        Returns:
            result (bool): True if the data was saved.
        """
        file_path.parent.mkdir(parents=True, exist_ok=True)
        try:
            temporary_path = file_path.with_suffix(".tmp")
            json_string = JSONEncoder.serialise_to_json(data)
            temporary_path.write_text(json_string + "\n", encoding="utf-8")
            temporary_path.replace(file_path)
        except OSError as e:
            raise RuntimeError from e
        return True

    @staticmethod
    def read_from_file(file_path: Path) -> object | None:
        """Reads the JSON data from a file and decodes it.

        Args:
            file_path (Path): The path to the JSON file.

        Raises:
            RuntimeError: If the data cannot be read or decoded.

        Returns:
            object: The decoded JSON data or None if the file does not exist.
        """
        if not file_path.exists():
            return None

        try:
            with file_path.open("r", encoding="utf-8") as json_file:
                json_data = json.load(json_file)
                return JSONEncoder.decode_object(json_data)
        except (json.JSONDecodeError, OSError) as e:
            raise RuntimeError from e

    @staticmethod
    def _expand(obj):
        """Turn dataclasses into dicts and tuples into lists, recursively."""
        if dataclasses.is_dataclass(obj) and not isinstance(obj, type) and not isinstance(obj, GroupElement):
            return {f.name: JSONEncoder._expand(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        if isinstance(obj, dict):
            return {str(k): JSONEncoder._expand(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [JSONEncoder._expand(item) for item in obj]
        return copy.copy(obj)

    @staticmethod
    def _add_datatype_hints(obj):
        """Add datatype hints to the object before it's serialized.

        Args:
            obj: The object to convert.

        Returns:
            The object with hints added
        """
        if isinstance(obj, dict):
            # Build a new dict so we can place hint-keys immediately after their associated key
            new_obj: dict = {}
            for k, v in obj.items():
                v_conv = JSONEncoder._add_datatype_hints(v) if isinstance(v, (dict, list)) else v
                new_obj[k] = v_conv

                if isinstance(v_conv, enum.Enum):
                    enum_cls = v_conv.__class__
                    new_obj[f"{k}__enum"] = f"{enum_cls.__module__}.{enum_cls.__name__}.{v_conv.name}"
                elif isinstance(v_conv, (Fraction, complex, MultiPoly, GroupElement)):
                    new_obj[f"{k}__datatype"] = type(v_conv).__name__
                    if isinstance(v_conv, MultiPoly):
                        new_obj[f"{k}__vars"] = v_conv.m

            return new_obj
        if isinstance(obj, list):
            return [JSONEncoder._add_datatype_hints(item) for item in obj]
        return obj

    @staticmethod
    def _encode_object(obj):
        """Convert the object to JSON serialisable format. This function is use by json.dump().

        Args:
            obj: The object to convert.

        Raises:
            TypeError: If the object is not serializable.

        Returns:
            The JSON serializable representation of the object.
        """
        if isinstance(obj, enum.Enum):
            return obj.value
        if isinstance(obj, Fraction):
            return str(obj)
        if isinstance(obj, complex):
            return [obj.real, obj.imag]
        if isinstance(obj, (MultiPoly, GroupElement)):
            return str(obj)
        if isinstance(obj, float):
            return obj
        error_msg = f"Type {type(obj)} not serializable"
        raise TypeError(error_msg)

    @staticmethod
    def _decode_value(value, datatype_hint: str, variables: int | None = None):
        if datatype_hint == "Fraction":
            return Fraction(value)
        if datatype_hint == "complex":
            return complex(value[0], value[1])
        if datatype_hint == "MultiPoly":
            return MultiPoly.parse(value, variables)
        if datatype_hint == "GroupElement":
            return GroupElement.parse(value)
        return value

    @staticmethod
    def _decode_enum(value, enum_hint: str):
        module_name, class_name, key_name = enum_hint.rsplit(".", 2)
        try:
            enum_cls = getattr(importlib.import_module(module_name), class_name)
        except (ImportError, AttributeError):
            return value
        if isinstance(enum_cls, type) and issubclass(enum_cls, enum.Enum):
            return getattr(enum_cls, key_name, value)
        return value

    @staticmethod
    def decode_object(obj):
        """Convert the object back to its original form, using the hints stored next to each key.

        Args:
            obj (obj): The object (list, dict, etc.) to convert.

        Returns:
            object (obj): The original object.
        """
        if isinstance(obj, dict):
            decoded = {}
            for k, v in obj.items():
                if k.endswith(("__enum", "__datatype", "__vars")):
                    continue
                enum_hint = obj.get(f"{k}__enum")
                datatype_hint = obj.get(f"{k}__datatype")
                if enum_hint:
                    decoded[k] = JSONEncoder._decode_enum(v, enum_hint)
                elif datatype_hint:
                    decoded[k] = JSONEncoder._decode_value(v, datatype_hint, obj.get(f"{k}__vars"))
                else:
                    decoded[k] = JSONEncoder.decode_object(v)
            return decoded
        if isinstance(obj, list):
            return [JSONEncoder.decode_object(item) for item in obj]
        return obj
