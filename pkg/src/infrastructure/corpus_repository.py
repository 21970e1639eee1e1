"""コーパス（群・体・複体の記述子）リポジトリ"""
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from ..domain.cycloarith import (
    Ball,
    ComplexInterval,
    CyclotomicNumber,
    GaloisElement,
    embed,
    galois_apply,
    working_precision,
)
from ..domain.entities import ComplexDescriptor, CorpusEntry
from ..domain.errors import DescriptorError, TamearithError
from ..domain.groupchar import (
    Character,
    CharacterTable,
    FiniteGroup,
    IrreducibleRep,
    character_table,
    extend_generator_matrices,
    permutation_elements,
)
from ..domain.metcomplex import HermitianFormSpec, PerfectComplex
from ..domain.tamefield import (
    BranchIntersectionData,
    IntersectionPoint,
    RamificationData,
    TameFieldDescriptor,
)
from .codecs import (
    FieldError,
    parse_cyclo_matrix,
    parse_cyclotomic,
    parse_group_ring_matrix,
    parse_interval,
    parse_rational,
)
from .config import BUNDLED_CORPUS, CORPUS_INDEX

logger = logging.getLogger(__name__)

KINDS = ("groups", "fields", "complexes")


class CorpusRepository:
    """記述子の索引と読み込み

    参照は、存在するファイルパス、コーパス内の相対パス、索引の id の順に解決する。
    """

    def __init__(self, corpus_dir: str = BUNDLED_CORPUS, max_group_order: int = 64):
        self.corpus_dir = Path(corpus_dir)
        self.config_file = self.corpus_dir / CORPUS_INDEX
        self.max_group_order = max_group_order
        self._entries_cache: Optional[Dict[str, CorpusEntry]] = None
        self._tables: Dict[Path, CharacterTable] = {}

    # 索引

    def get_all_entries(self, kind: Optional[str] = None) -> List[CorpusEntry]:
        """有効な記述子の一覧を取得"""
        self._load_entries_if_needed()
        return [e for e in self._entries_cache.values() if e.is_active and (kind is None or e.kind == kind)]

    def get_entry(self, entry_id: str) -> Optional[CorpusEntry]:
        self._load_entries_if_needed()
        return self._entries_cache.get(entry_id)

    def resolve(self, ref: str, base: Optional[Path] = None) -> Path:
        """参照をファイルパスに解決する

        Raises:
            DescriptorError: どこにも見つからない
        """
        candidates = [Path(ref)]
        if base is not None:
            candidates.append(base / ref)
        candidates.append(self.corpus_dir / ref)
        for path in candidates:
            if path.is_file():
                return path.resolve()
        entry = self.get_entry(ref) if self.config_file.exists() else None
        if entry is not None:
            return (self.corpus_dir / entry.filename).resolve()
        raise DescriptorError(str(ref), [f"記述子が見つかりません（コーパス: {self.corpus_dir}）"])

    def _load_entries_if_needed(self):
        if self._entries_cache is None:
            self._load_entries()

    def _load_entries(self):
        """索引ファイルを読み込み"""
        data = self._read_json(self.config_file)
        self._entries_cache = {}
        problems = []
        for kind in KINDS:
            for n, item in enumerate(data.get(kind, [])):
                try:
                    entry = CorpusEntry(
                        id=item["id"],
                        kind=kind,
                        name=item["name"],
                        filename=item["filename"],
                        description=item.get("description", ""),
                        is_active=item.get("is_active", True),
                    )
                except KeyError as e:
                    problems.append(f"{kind}[{n}]: 項目 {e} がありません")
                    continue
                self._entries_cache[entry.id] = entry
        if problems:
            raise DescriptorError(str(self.config_file), problems)
        logger.debug(f"コーパス索引を読み込みました: {len(self._entries_cache)} 件")

    def reload(self):
        self._entries_cache = None
        self._tables = {}

    @staticmethod
    def _read_json(path: Path) -> Dict[str, Any]:
        """JSON を読み込み、構文エラーは行・列つきの診断にする"""
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError as e:
            raise DescriptorError(str(path), ["ファイルが見つかりません"]) from e
        except json.JSONDecodeError as e:
            raise DescriptorError(str(path), [f"行 {e.lineno} 列 {e.colno}: {e.msg}"]) from e
        if not isinstance(data, dict):
            raise DescriptorError(str(path), ["最上位は JSON オブジェクトである必要があります"])
        return data

    # 群

    def load_group(self, ref: str, base: Optional[Path] = None) -> CharacterTable:
        """群の記述子から指標表（既約表現つき）を作る"""
        path = self.resolve(ref, base)
        if path not in self._tables:
            data = self._read_json(path)
            self._tables[path] = self._build_table(data, str(path))
            logger.info(f"群を読み込みました: {self._tables[path].group.name} ({path.name})")
        return self._tables[path]

    def group_permutations(self, ref: str, base: Optional[Path] = None) -> List[Tuple[int, ...]]:
        """置換で与えられた群の元（要素番号順）"""
        path = self.resolve(ref, base)
        data = self._read_json(path)
        if "permutations" not in data:
            raise DescriptorError(str(path), ["permutations がありません（根への作用が決まりません）"])
        return permutation_elements(data["permutations"], data.get("name", path.stem))

    def _build_table(self, data: Dict[str, Any], source: str) -> CharacterTable:
        name = data.get("name", Path(source).stem)
        if "mul_table" in data:
            G = FiniteGroup.from_table(data["mul_table"], name=name, generators=data.get("generators", ()))
        elif "permutations" in data:
            G = FiniteGroup.from_permutations(data["permutations"], name=name)
        else:
            raise DescriptorError(source, ["mul_table か permutations のどちらかが必要です"])
        problems = []
        if "order" in data and data["order"] != G.order:
            problems.append(f"order: 宣言された位数 {data['order']} が乗積表の位数 {G.order} と一致しません")

        supplied = None
        if "char_table" in data:
            try:
                supplied = [
                    Character(tuple(parse_cyclotomic(v, f"char_table[{a}][{c}]") for c, v in enumerate(row)))
                    for a, row in enumerate(data["char_table"])
                ]
            except (FieldError, TypeError) as e:
                problems.append(str(e))

        irreps = []
        for n, item in enumerate(data.get("irreps", [])):
            path = f"irreps[{n}]"
            try:
                irreps.append(self._parse_irrep(G, item, path))
            except (FieldError, DescriptorError, KeyError, TypeError) as e:
                problems.append(f"{path}: {e}")
        if problems:
            raise DescriptorError(source, problems)
        return character_table(G, supplied, irreps, max_order=self.max_group_order)

    @staticmethod
    def _parse_irrep(G: FiniteGroup, item: Dict[str, Any], path: str) -> IrreducibleRep:
        if "matrices" in item:
            matrices = tuple(parse_cyclo_matrix(m, f"{path}.matrices[{g}]") for g, m in enumerate(item["matrices"]))
            if len(matrices) != G.order:
                raise FieldError(f"{path}.matrices", f"行列の数 {len(matrices)} が位数 {G.order} と一致しません")
        elif "generator_matrices" in item:
            given = item["generator_matrices"]
            if len(given) != len(G.generators):
                raise FieldError(f"{path}.generator_matrices", f"生成元の数 {len(G.generators)} と一致しません")
            gen_matrices = {
                s: parse_cyclo_matrix(m, f"{path}.generator_matrices[{k}]")
                for k, (s, m) in enumerate(zip(G.generators, given))
            }
            matrices = extend_generator_matrices(G, gen_matrices)
        else:
            raise FieldError(path, "matrices か generator_matrices のどちらかが必要です")
        dim = len(matrices[G.identity])
        if item.get("dim", dim) != dim:
            raise FieldError(f"{path}.dim", f"宣言された次元 {item['dim']} が行列の次数 {dim} と一致しません")
        return IrreducibleRep(matrices, dim, item.get("character_index"))

    # 体

    def load_field(self, ref: str) -> TameFieldDescriptor:
        """体の記述子を読み込み、全ての不変条件を検証する"""
        path = self.resolve(ref)
        data = self._read_json(path)
        source = str(path)
        for key in ("name", "group", "ramification"):
            if key not in data:
                raise DescriptorError(source, [f"項目 {key} がありません"])
        table = self.load_group(data["group"], path.parent)
        G = table.group

        problems: List[str] = []
        exact = None
        embeddings: Tuple[ComplexInterval, ...] = ()
        try:
            if "normal_basis" in data:
                exact = self._exact_from_galois(G, data, problems)
            elif "exact_embeddings" in data:
                exact = tuple(parse_cyclotomic(v, f"exact_embeddings[{g}]") for g, v in enumerate(data["exact_embeddings"]))
            if exact is not None:
                embeddings = tuple(embed(v) for v in exact)
            elif "embeddings" in data:
                embeddings = tuple(parse_interval(v, f"embeddings[{g}]") for g, v in enumerate(data["embeddings"]))
            elif "polynomial" in data:
                embeddings = self._embeddings_from_roots(data, path.parent)
            else:
                problems.append("normal_basis, exact_embeddings, embeddings, polynomial のいずれかが必要です")
        except (FieldError, TamearithError) as e:
            problems.append(str(e))

        ram = []
        for n, item in enumerate(data.get("ramification", [])):
            try:
                ram.append(RamificationData(
                    p=int(item["p"]),
                    f=int(item["f"]),
                    num_primes_above=int(item["num_primes_above"]),
                    inertia=tuple(int(g) for g in item["inertia"]),
                    inertia_char={int(k): int(v) for k, v in item.get("inertia_char", {}).items()},
                ))
            except (KeyError, TypeError, ValueError) as e:
                problems.append(f"ramification[{n}]: 不正な項目です ({e})")

        intersections = None
        if "intersections" in data:
            points = []
            for n, item in enumerate(data["intersections"]):
                try:
                    points.append(IntersectionPoint(
                        p=int(item["p"]),
                        f=int(item.get("f", 1)),
                        component_inertia=tuple(int(g) for g in item["component_inertia"]),
                        component_char={int(k): int(v) for k, v in item.get("component_char", {}).items()},
                    ))
                except (KeyError, TypeError, ValueError) as e:
                    problems.append(f"intersections[{n}]: 不正な項目です ({e})")
            intersections = BranchIntersectionData(tuple(points))
        if problems:
            raise DescriptorError(source, problems)

        conj = data.get("conj_element")
        if conj is None:
            conj = self._find_conjugation(G, embeddings)
        F = TameFieldDescriptor(
            name=data["name"],
            table=table,
            embeddings=embeddings,
            conj_element=int(conj),
            ram=tuple(ram),
            exact=exact,
            integral_normal_basis=bool(data.get("integral_normal_basis", False)),
            k_degree=int(data.get("k_degree", 1)),
            d_K=int(data.get("d_K", 1)),
            intersections=intersections,
        )
        logger.info(f"体を読み込みました: {F.name}（分岐素数 {F.ramified_primes}）")
        return F

    @staticmethod
    def _exact_from_galois(G: FiniteGroup, data: Dict[str, Any], problems: List[str]) -> Optional[Tuple[CyclotomicNumber, ...]]:
        """b と各元の作用 ζ_n ↦ ζ_n^{k_g} から σ₀(g(b)) を厳密に求める"""
        b = parse_cyclotomic(data["normal_basis"], "normal_basis")
        exponents = data.get("galois_exponents")
        if not isinstance(exponents, list) or len(exponents) != G.order:
            problems.append(f"galois_exponents: 位数 {G.order} の長さのリストが必要です")
            return None
        n = b.n
        try:
            images = tuple(galois_apply(GaloisElement(n, int(k)), b) for k in exponents)
        except TamearithError as e:
            problems.append(f"galois_exponents: {e}")
            return None
        # 指数は Gal(N/Q) の代表元なので、積の整合は b の像で確かめる
        for g in range(G.order):
            for h in range(G.order):
                if galois_apply(GaloisElement(n, int(exponents[g])), images[h]) != images[G.mul[g][h]]:
                    problems.append(f"galois_exponents: 元 {g}, {h} で g(h(b)) ≠ (gh)(b) です")
                    return None
        return images

    def _embeddings_from_roots(self, data: Dict[str, Any], base: Path) -> Tuple[ComplexInterval, ...]:
        """最小多項式の根と、根の単項式で書いた b から σ₀(g(b)) を包む区間を作る

        根は (虚部, 実部) の順に並べ、群の元は置換 π_g により x_i ↦ x_{π_g(i)} と作用する。
        """
        coeffs = [int(parse_rational(c, f"polynomial[{i}]")) for i, c in enumerate(data["polynomial"])]
        perms = self.group_permutations(data["group"], base)
        degree = len(coeffs) - 1
        if any(len(p) != degree for p in perms):
            raise FieldError("polynomial", f"次数 {degree} が置換の点の数と一致しません")
        monomials = []
        for n, term in enumerate(data.get("normal_basis_monomials", [])):
            c = parse_rational(term[0], f"normal_basis_monomials[{n}][0]")
            exps = [int(e) for e in term[1]]
            if len(exps) != degree:
                raise FieldError(f"normal_basis_monomials[{n}]", "指数の数が根の数と一致しません")
            monomials.append((c, exps))
        if not monomials:
            raise FieldError("normal_basis_monomials", "b の単項式がありません")

        prec = working_precision()
        with mpmath.workprec(prec + 32):
            roots, err = mpmath.polyroots(coeffs, maxsteps=200, extraprec=2 * prec, error=True)
        roots = sorted(roots, key=lambda z: (float(mpmath.im(z)), float(mpmath.re(z))))
        radius = max(mpmath.mpf(err), mpmath.ldexp(mpmath.mpf(1), 8 - prec))
        root_balls = [
            ComplexInterval(Ball(mpmath.re(z), radius), Ball(mpmath.im(z), radius))
            for z in roots
        ]

        embeddings = []
        for perm in perms:
            total = ComplexInterval.exact(0)
            for c, exps in monomials:
                term = ComplexInterval.exact(1)
                for i, e in enumerate(exps):
                    for _ in range(e):
                        term = term * root_balls[perm[i]]
                total = total + term.scale(Fraction(c))
            embeddings.append(total)
        return tuple(embeddings)

    @staticmethod
    def _find_conjugation(G: FiniteGroup, embeddings: Sequence[ComplexInterval]) -> int:
        """σ₀(c(b)) = conj(σ₀(b)) となる元 c"""
        if len(embeddings) != G.order:
            return G.identity
        target = embeddings[G.identity].conjugate().midpoint
        return min(range(G.order), key=lambda g: abs(embeddings[g].midpoint - target))

    # 複体

    def load_complex(self, ref: str) -> ComplexDescriptor:
        """複体の記述子を読み込む"""
        path = self.resolve(ref)
        data = self._read_json(path)
        source = str(path)
        for key in ("group", "ranks"):
            if key not in data:
                raise DescriptorError(source, [f"項目 {key} がありません"])
        table = self.load_group(data["group"], path.parent)
        G = table.group
        low = int(data.get("low", 0))
        ranks = tuple(int(r) for r in data["ranks"])
        problems = []
        boundaries = []
        for t, rows in enumerate(data.get("boundaries", [])):
            try:
                boundaries.append(parse_group_ring_matrix(G, rows, f"boundaries[{t}]"))
            except FieldError as e:
                problems.append(str(e))

        def bases(block: Dict[str, Any], path_prefix: str) -> Dict[int, Any]:
            parsed = {}
            for deg, rows in block.items():
                try:
                    parsed[int(deg)] = parse_group_ring_matrix(G, rows, f"{path_prefix}[{deg}]")
                except FieldError as e:
                    problems.append(str(e))
            return parsed

        q_bases = bases(data.get("q_bases", {}), "q_bases")
        p_bases = {int(p): bases(block, f"p_bases[{p}]") for p, block in data.get("p_bases", {}).items()}
        if problems:
            raise DescriptorError(source, problems)

        P = PerfectComplex(G, low, ranks, tuple(boundaries), data.get("name", path.stem))
        forms = None
        if "form_scales" in data:
            forms = HermitianFormSpec({
                i: float(data["form_scales"].get(str(i), 1.0)) * np.eye(G.order * P.rank(i), dtype=complex)
                for i in P.degrees
            })
        try:
            descriptor = ComplexDescriptor(
                complex=P,
                table=table,
                forms=forms,
                metric=data.get("metric", "hermitian"),
                q_bases=q_bases,
                p_bases=p_bases,
                primes=[int(p) for p in data.get("primes", [])],
                rescale=[float(a) for a in data["rescale"]] if "rescale" in data else None,
            )
        except ValueError as e:
            raise DescriptorError(source, [str(e)]) from e
        logger.info(f"複体を読み込みました: {P.name}（次数 {P.low}..{P.high}）")
        return descriptor
