"""
Tests for the table-command registry
"""

from core.module_loader import ModuleLoader
from core.run_config import Command

COMMANDS = [c.value for c in Command]


def test_every_command_is_registered_and_loadable():
    loader = ModuleLoader()
    assert sorted(loader.module_registry) == sorted(COMMANDS)
    for name in COMMANDS:
        instance = loader.load_module(name)
        assert instance is not None, name
        assert callable(instance.run)
        assert instance.name and instance.description
    assert sorted(loader.loaded_modules) == sorted(COMMANDS)


def test_instances_are_cached():
    loader = ModuleLoader()
    assert loader.load_module("enclose") is loader.load_module("enclose")


def test_unknown_command():
    loader = ModuleLoader()
    assert loader.load_module("nope") is None
    assert not loader.is_module_available("nope")
    assert loader.check_module_dependencies("nope") == {}


def test_status_reports_dependencies():
    status = ModuleLoader().get_module_status()
    assert set(status) == set(COMMANDS)
    for info in status.values():
        assert info["available"]
        assert info["dependencies_ok"]
        assert set(info["dependencies"]) == {"numpy", "scipy"}


def test_missing_command_files(tmp_path):
    loader = ModuleLoader(str(tmp_path))
    assert not loader.is_module_available("enclose")
    assert loader.load_module("enclose") is None
    assert not any(info["available"] for info in loader.get_module_status().values())
