"""
Dynamic loader for the phasebound table commands
"""

import importlib
import importlib.util
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger("phasebound.loader")

NUMERIC_DEPENDENCIES = ["numpy", "scipy"]


class ModuleLoader:
    """Loads one command class per file from the modules directory"""

    def __init__(self, modules_dir: str = None):
        self.modules_dir = Path(modules_dir) if modules_dir else Path(__file__).parent.parent / "modules"
        self.loaded_modules: Dict[str, Any] = {}
        self.module_registry: Dict[str, Dict[str, Any]] = {}
        self._register_core_modules()

    def _register_core_modules(self):
        """Register the built-in table commands"""
        self.module_registry = {
            "enclose": {
                "name": "Zero Enclosures",
                "description": "Certified lower/upper bounds for the k-th zero of a family",
                "file": "enclose_table.py",
                "class": "EncloseTable",
                "dependencies": NUMERIC_DEPENDENCIES,
            },
            "count": {
                "name": "Zero Counts",
                "description": "Bounds on the number of zeros of J or J' below a level",
                "file": "count_table.py",
                "class": "CountTable",
                "dependencies": NUMERIC_DEPENDENCIES,
            },
            "oracle": {
                "name": "Phase Oracle",
                "description": "Reference zeros and continuous phase values",
                "file": "oracle_table.py",
                "class": "OracleTable",
                "dependencies": NUMERIC_DEPENDENCIES,
            },
            "bench": {
                "name": "Classic Bounds Benchmark",
                "description": "Compare enclosures against McMahon, Hethcote, Elbert-Laforgia, Qu-Wong",
                "file": "bench_table.py",
                "class": "BenchTable",
                "dependencies": NUMERIC_DEPENDENCIES,
            },
            "errgrid": {
                "name": "Relative Width Grid",
                "description": "log10 relative enclosure width over (nu, k)",
                "file": "errgrid_table.py",
                "class": "ErrgridTable",
                "dependencies": NUMERIC_DEPENDENCIES,
            },
            "verify": {
                "name": "Sturm Verification",
                "description": "Potential-difference sign checks and tail ordering checks",
                "file": "verify_table.py",
                "class": "VerifyTable",
                "dependencies": NUMERIC_DEPENDENCIES,
            },
            "constants": {
                "name": "Critical Constants",
                "description": "tau*, x* and z* per order",
                "file": "constants_table.py",
                "class": "ConstantsTable",
                "dependencies": NUMERIC_DEPENDENCIES,
            },
        }

    def is_module_available(self, module_name: str) -> bool:
        """Registered and its file is present"""
        module_info = self.module_registry.get(module_name)
        if module_info is None:
            return False
        return (self.modules_dir / module_info["file"]).exists()

    def check_module_dependencies(self, module_name: str) -> Dict[str, bool]:
        """Check if module dependencies are importable"""
        module_info = self.module_registry.get(module_name)
        if module_info is None:
            return {}

        dependency_status = {}
        for dep in module_info.get("dependencies", []):
            try:
                importlib.import_module(dep)
                dependency_status[dep] = True
            except ImportError:
                dependency_status[dep] = False
        return dependency_status

    def load_module(self, module_name: str) -> Optional[Any]:
        """Load and return a command instance, or None when it cannot be loaded"""
        if module_name in self.loaded_modules:
            return self.loaded_modules[module_name]

        module_info = self.module_registry.get(module_name)
        if module_info is None:
            logger.error(f"Module '{module_name}' not found in registry")
            return None

        module_file = self.modules_dir / module_info["file"]
        if not module_file.exists():
            logger.error(f"Module file not found: {module_file}")
            return None

        qualified = f"phasebound_modules.{module_name}"
        spec = importlib.util.spec_from_file_location(qualified, module_file)
        if spec is None or spec.loader is None:
            logger.error(f"Could not load module spec for {module_name}")
            return None

        module = importlib.util.module_from_spec(spec)
        sys.modules[qualified] = module
        try:
            spec.loader.exec_module(module)
        except ImportError as e:
            sys.modules.pop(qualified, None)
            logger.error(f"Error loading module {module_name}: {e}")
            return None

        class_name = module_info["class"]
        module_class = getattr(module, class_name, None)
        if module_class is None:
            logger.error(f"Class '{class_name}' not found in module {module_name}")
            return None

        instance = module_class()
        self.loaded_modules[module_name] = instance
        return instance

    def get_module_status(self) -> Dict[str, Dict[str, Any]]:
        """Get status of all commands"""
        status = {}
        for module_name, module_info in self.module_registry.items():
            dependencies = self.check_module_dependencies(module_name)
            status[module_name] = {
                "name": module_info["name"],
                "description": module_info["description"],
                "available": self.is_module_available(module_name),
                "dependencies_ok": all(dependencies.values()) if dependencies else True,
                "dependencies": dependencies,
            }
        return status
