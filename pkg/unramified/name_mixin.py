#
#   unramified - exact unramified local factors for quadratic space pairs
#   Copyright (C) 2024 unramified contributors
#
#   This program is free software: you can redistribute it and/or modify
#   it under the terms of the GNU Lesser General Public License as published by
#   the Free Software Foundation, either version 3 of the License, or
#   (at your option) any later version.
#
#   This program is distributed in the hope that it will be useful,
#   but WITHOUT ANY WARRANTY; without even the implied warranty of
#   MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#   GNU Lesser General Public License for more details.
#
#   You should have received a copy of the GNU Lesser General Public License
#   along with this program.  If not, see <http://www.gnu.org/licenses/>.


__all__ = ["NameMixin"]


class NameMixin:
    """Registry of named variants.

    Subclasses of a registry root are registered under their `_type`
    and rebuilt from plain dictionaries with `make()`.
    """
    _types = {}
    _default_type = None
    _type = None

    @classmethod
    def register(cls, sub):
        if sub._type is None:
            sub._type = sub.__name__.lower()
        k = cls, sub._type
        assert k not in cls._types, (k, sub, cls._types)
        cls._types[k] = sub
        return sub

    @classmethod
    def names(cls):
        return sorted(typ for root, typ in cls._types if root is cls)

    def dict(self):
        return {"type": self._type}

    @classmethod
    def make(cls, data):
        if isinstance(data, cls):
            return data
        if isinstance(data, str):
            data = {"type": data}
        data = dict(data)
        typ = data.pop("type", cls._default_type)
        try:
            sub = cls._types[(cls, typ)]
        except KeyError:
            raise KeyError("unknown {} type {!r}, known: {}".format(
                cls.__name__, typ, ", ".join(cls.names())))
        return sub(**data)

    @property
    def type(self):
        return self._type

    def __str__(self):
        return "<{}/{}>".format(self.__class__.__name__, self._type)
