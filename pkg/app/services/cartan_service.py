from pathlib import Path
from typing import Optional, Tuple, Union

from app.algebra.cartan import (
    CartanAlgebra,
    CartanSpec,
    GradedAlgebra,
    build,
    center_quotient,
    derived_core,
    dynkin_ascii,
    grade_by_r,
    load_spec,
    simple_core,
)
from app.algebra.liesuper import LieSuperAlgebra
from app.algebra.presets import PRESETS, load_preset_file, preset, preset_files
from app.algebra.roots import enumerate_root_systems, initial_system, reflect
from app.core.exceptions import NotApplicable, UnknownPreset
from app.core.log_config import logger
from app.schemas.cartan import (
    BuildReport,
    GradeReport,
    ReflectReport,
    RootClassesReport,
    RootSpace,
    RunConfig,
    SpecSource,
    Variant,
)


def resolve_spec_path(text: str, matrix: Optional[int] = None) -> CartanSpec:
    """A spec file on disk, or the stem of a shipped preset file ('wk3.json' with matrix 1 → wk3_1).

    Raises:
        UnknownPreset: If neither a file nor a shipped preset matches.
        SpecFileError: If the file does not parse.
    """
    path = Path(text)
    if path.exists():
        return load_spec(path)
    stem = path.stem
    candidates = [f"{stem}_{matrix}"] if matrix is not None else [stem, f"{stem}_1"]
    for candidate in candidates:
        if candidate in preset_files():
            return load_preset_file(candidate)
    raise UnknownPreset(f"No spec file '{text}' and no shipped preset named {' or '.join(candidates)}")


class CartanService:
    """Service to build, grade and reflect Cartan-matrix algebras."""

    def resolve(self, source: SpecSource) -> Union[CartanSpec, LieSuperAlgebra]:
        if source.preset is not None:
            return preset(source.preset, *source.args)
        if source.preset_file is not None:
            return load_preset_file(source.preset_file)
        return CartanSpec.from_file_dict(source.spec.model_dump(exclude_none=True))

    def cartan(self, source: SpecSource) -> CartanAlgebra:
        resolved = self.resolve(source)
        if not isinstance(resolved, CartanSpec):
            raise NotApplicable(f"'{source.preset}' is given by matrices, not by a Cartan matrix")
        return build(resolved)

    def algebra(self, source: SpecSource) -> Tuple[Optional[CartanAlgebra], LieSuperAlgebra]:
        """The algebra a source names, with its variant applied."""
        resolved = self.resolve(source)
        if isinstance(resolved, LieSuperAlgebra):
            if source.variant != "full":
                raise NotApplicable(f"variant '{source.variant}' needs a Cartan matrix")
            return None, resolved
        ca = build(resolved)
        return ca, self.variant(ca, source.variant)

    @staticmethod
    def variant(ca: CartanAlgebra, variant: Variant) -> LieSuperAlgebra:
        if variant == "derived":
            return derived_core(ca)
        if variant == "core":
            return simple_core(ca)
        if variant == "center_quotient":
            return center_quotient(ca)
        return ca.algebra

    def graded(self, source: SpecSource, r) -> GradedAlgebra:
        _, g = self.algebra(source)
        return grade_by_r(g, r)

    def grade_report(self, source: SpecSource, r, config: RunConfig) -> GradeReport:
        graded = self.graded(source, r)
        return GradeReport(
            config=config,
            name=graded.algebra.meta.get("name") or "g",
            r=list(graded.r),
            simplest=graded.simplest,
            depth=graded.depth,
            dims_by_degree=graded.dims_by_degree(),
        )

    def build_report(self, source: SpecSource, config: RunConfig) -> BuildReport:
        ca = self.cartan(source)
        core = simple_core(ca)
        report = BuildReport(
            config=config,
            name=ca.spec.name or "g(A)",
            dim=ca.algebra.dim,
            sdim=ca.algebra.sdim_str(),
            rank=ca.rank,
            size=ca.spec.n,
            center_dim=len(ca.centrals),
            derived_dim=derived_core(ca).dim,
            simple_core_dim=core.dim,
            simple_core_sdim=core.sdim_str(),
            dynkin=dynkin_ascii(ca.spec),
            root_spaces=[RootSpace(weight=list(w), dim=n) for w, n in ca.root_space_dims().items()],
        )
        logger.info(f"build report for {report.name}: dim {report.dim}, simple core {report.simple_core_dim}")
        return report

    def reflect(self, source: SpecSource, sequence, config: RunConfig) -> ReflectReport:
        ca = self.cartan(source)
        system = initial_system(ca)
        steps = []
        for k in sequence:
            system = reflect(ca, system, k - 1)
            steps.append(f"reflect in node {k}: {dynkin_ascii(system.spec).splitlines()[0]}")
        return ReflectReport(
            config=config,
            steps=steps,
            roots=[list(w) for w in system.roots],
            dynkin=dynkin_ascii(system.spec),
            matrix=[[str(v) for v in row] for row in system.spec.matrix()],
        )

    def enumerate_roots(self, source: SpecSource, config: RunConfig, max_systems: int = 5000) -> RootClassesReport:
        ca = self.cartan(source)
        classes = enumerate_root_systems(ca, max_systems=max_systems)
        return RootClassesReport(
            config=config,
            name=ca.spec.name or "g(A)",
            classes=len(classes),
            representatives=[dynkin_ascii(system.spec) for system in classes.values()],
        )

    @staticmethod
    def presets() -> dict:
        return {"families": sorted(PRESETS), "files": preset_files()}
