"""Command-line entry point: ``moh <command> [options]``.

Commands are composable through files: ``clean`` -> ``tag`` -> ``transform``
-> ``featurize`` / ``train-eval`` write exactly the artifacts that
``pipeline`` writes in one go.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import platform
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
import scipy

from . import __version__
from .classify import CLASSIFIERS, evaluate, make_classifier, make_split
from .corpus import CorpusSchema, Post, clean_posts, clean_text, load_posts, write_posts
from .features import SCHEMES, fit_vocabulary, transform
from .knowledge_base import KbSources, build_kb, load_pairs, save_kb
from .langid import Resources, TaggedToken, tag_text
from .lexicon import Dictionary, Language
from .rescue import RescueConfig, rescue_tokens, rescue_trace
from .transliterate import CharRuleTable, TransformVariant, simulate

logger = logging.getLogger("moh")

EXIT_OK, EXIT_VALIDATION, EXIT_RUNTIME = 0, 1, 2

STAGES = ("clean", "tag", "rescue", "transform", "featurize", "split", "train", "evaluate")

CLEANED = "cleaned.csv"
TAGGED = "tagged.jsonl"
RESCUE_TRACE = "rescue_trace.jsonl"
TRANSFORMED = "transformed.csv"
SPLIT = "split.json"
MANIFEST = "manifest.json"


class ValidationError(ValueError):
    pass


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


# --------------------------------------------------------------------------- config

PATH_KEYS = ("corpus", "kb", "en_dict", "hi_dict", "freq_en", "freq_hi", "profanity", "rules")


@dataclass
class PipelineConfig:
    corpus: Optional[Path] = None
    kb: Optional[Path] = None
    en_dict: Optional[Path] = None
    hi_dict: Optional[Path] = None
    freq_en: Optional[Path] = None
    freq_hi: Optional[Path] = None
    profanity: Optional[Path] = None
    rules: Optional[Path] = None
    threshold: float = 0.70
    variant: str = "moh"
    schemes: list[str] = field(default_factory=lambda: ["count", "tfidf_word"])
    classifiers: list[str] = field(default_factory=lambda: ["nb", "logreg"])
    seed: int = 0
    test_fraction: float = 0.2
    out: Path = Path("moh-out")
    text_column: str = "text"
    label_column: str = "label"
    id_column: str = "id"
    delimiter: str = ","

    def schema(self) -> CorpusSchema:
        return CorpusSchema(self.text_column, self.label_column, self.id_column, self.delimiter)

    def validate(self, required=("corpus", "kb", "en_dict", "hi_dict")) -> None:
        """Check scalar settings first, then that referenced files exist."""
        if not 0.0 < self.threshold < 1.0:
            raise ValidationError(f"threshold must lie in (0, 1), got {self.threshold}")
        if not 0.0 < self.test_fraction < 1.0:
            raise ValidationError(f"test_fraction must lie in (0, 1), got {self.test_fraction}")
        try:
            TransformVariant(self.variant)
        except ValueError:
            raise ValidationError(f"unknown variant {self.variant!r}") from None
        for scheme in self.schemes:
            if scheme not in SCHEMES:
                raise ValidationError(f"unknown scheme {scheme!r}")
        for name in self.classifiers:
            if name not in CLASSIFIERS:
                raise ValidationError(f"unknown classifier {name!r}")
        for key in required:
            if getattr(self, key) is None:
                raise ValidationError(f"missing required setting {key!r}")
        for key in PATH_KEYS:
            path = getattr(self, key)
            if path is not None and not Path(path).is_file():
                raise ValidationError(f"{key}: file not found: {path}")

    def as_dict(self) -> dict:
        out = {}
        for key, value in self.__dict__.items():
            out[key] = str(value) if isinstance(value, Path) else value
        return out

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.as_dict(), sort_keys=True).encode()).hexdigest()


def read_config_file(path: Path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def _split_list(value) -> list[str]:
    if isinstance(value, list):
        return value
    return [v.strip() for v in str(value).split(",") if v.strip()]


def build_config(args: argparse.Namespace) -> PipelineConfig:
    """Merge the config file (paths relative to it) with command-line flags; flags win."""
    settings: dict[str, object] = {}
    if getattr(args, "config", None):
        cfg_path = Path(args.config)
        if not cfg_path.is_file():
            raise ValidationError(f"config file not found: {cfg_path}")
        raw = read_config_file(cfg_path)
        for key, value in raw.items():
            if key in PATH_KEYS or key == "out":
                candidate = Path(value)
                settings[key] = candidate if candidate.is_absolute() else cfg_path.parent / candidate
            else:
                settings[key] = value
    for key in PATH_KEYS + ("out", "threshold", "variant", "scheme", "classifier", "seed",
                            "test_fraction", "text_column", "label_column", "id_column", "delimiter"):
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value

    cfg = PipelineConfig()
    try:
        for key, value in settings.items():
            if key in PATH_KEYS or key == "out":
                setattr(cfg, key, Path(value))
            elif key == "threshold":
                cfg.threshold = float(value)
            elif key == "test_fraction":
                cfg.test_fraction = float(value)
            elif key == "seed":
                cfg.seed = int(value)
            elif key in ("scheme", "schemes"):
                cfg.schemes = _split_list(value)
            elif key in ("classifier", "classifiers"):
                cfg.classifiers = _split_list(value)
            elif key in ("variant", "text_column", "label_column", "id_column", "delimiter"):
                setattr(cfg, key, str(value))
            else:
                raise ValidationError(f"unknown setting {key!r}")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(str(exc)) from None
    return cfg


def load_resources(cfg: PipelineConfig) -> Resources:
    return Resources.load(
        kb=cfg.kb,
        en_dict=cfg.en_dict,
        hi_dict=cfg.hi_dict,
        freq_en=cfg.freq_en,
        freq_hi=cfg.freq_hi,
        profanity=cfg.profanity,
    )


def load_rules(cfg: PipelineConfig) -> CharRuleTable:
    return CharRuleTable.load(cfg.rules) if cfg.rules else CharRuleTable.default()


# --------------------------------------------------------------------------- stage bodies

@dataclass
class TaggedPost:
    id: str
    label: Optional[str]
    tokens: list[TaggedToken]

    def to_json(self) -> str:
        record = {"id": self.id, "tokens": [t.to_dict() for t in self.tokens]}
        if self.label is not None:
            record["label"] = self.label
        return json.dumps(record, ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "TaggedPost":
        record = json.loads(line)
        return cls(record["id"], record.get("label"), [TaggedToken.from_dict(t) for t in record["tokens"]])


def _write_lines(path: Path, lines) -> None:
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")


def stage_clean(cfg: PipelineConfig, out: Path) -> list[Post]:
    loaded = load_posts(cfg.corpus, cfg.schema())
    posts = clean_posts(loaded)
    write_posts(posts, out / CLEANED, _output_schema(cfg))
    logger.info("clean: %d rows read, %d posts kept", loaded.rows, len(posts))
    return posts


def _output_schema(cfg: PipelineConfig) -> CorpusSchema:
    return CorpusSchema("text", "label", "id", ",")


def stage_tag(posts: list[Post], resources: Resources) -> list[TaggedPost]:
    return [TaggedPost(p.id, p.label, tag_text(p.text, resources)) for p in posts]


def stage_rescue(tagged: list[TaggedPost], resources: Resources, cfg: PipelineConfig, out: Path) -> list[TaggedPost]:
    config = RescueConfig(cfg.threshold)
    cache: dict = {}
    rescued, traces = [], []
    for post in tagged:
        tokens = rescue_tokens(post.tokens, resources.kb, config, cache)
        traces.extend(rescue_trace(post.tokens, tokens))
        rescued.append(TaggedPost(post.id, post.label, tokens))
    _write_lines(out / TAGGED, (p.to_json() for p in rescued))
    _write_lines(out / RESCUE_TRACE, (json.dumps(t, ensure_ascii=False, sort_keys=True) for t in traces))
    return rescued


def stage_transform(tagged: list[TaggedPost], profanity_kb, cfg: PipelineConfig, out: Path) -> list[Post]:
    rules = load_rules(cfg)
    posts = [Post(p.id, simulate(cfg.variant, p.tokens, profanity_kb, rules), p.label) for p in tagged]
    write_posts(posts, out / TRANSFORMED, _output_schema(cfg))
    return posts


def stage_featurize(posts: list[Post], cfg: PipelineConfig, out: Path) -> None:
    feature_dir = out / "features"
    feature_dir.mkdir(parents=True, exist_ok=True)
    texts = [p.text for p in posts]
    for scheme in cfg.schemes:
        if not texts:
            continue
        vocab = fit_vocabulary(texts, scheme)
        transform(texts, vocab, scheme).export(
            feature_dir / f"{scheme}.matrix.tsv", feature_dir / f"{scheme}.vocab.tsv"
        )


def stage_split(posts: list[Post], cfg: PipelineConfig, out: Path):
    labels = [p.label for p in posts]
    if any(label is None or label == "" for label in labels):
        raise ValueError("every post needs a label for train/evaluate")
    split = make_split(labels, seed=cfg.seed, test_fraction=cfg.test_fraction)
    record = {
        "seed": split.seed,
        "test_fraction": split.test_fraction,
        "stratified": split.stratified,
        "train": [posts[i].id for i in split.train],
        "test": [posts[i].id for i in split.test],
    }
    (out / SPLIT).write_text(json.dumps(record, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return split


def stage_train(posts: list[Post], split, cfg: PipelineConfig) -> dict:
    texts = [p.text for p in posts]
    labels = np.array([p.label for p in posts])
    train_docs = [texts[i] for i in split.train]
    models = {}
    for scheme in cfg.schemes:
        vocab = fit_vocabulary(train_docs, scheme)
        X_train = transform(train_docs, vocab, scheme).matrix
        for name in cfg.classifiers:
            model = make_classifier(name, seed=cfg.seed).fit(X_train, labels[split.train])
            models[(scheme, name)] = (vocab, model)
    return models


def stage_evaluate(posts: list[Post], split, models: dict, out: Path) -> None:
    report_dir = out / "reports"
    report_dir.mkdir(parents=True, exist_ok=True)
    test_docs = [posts[i].text for i in split.test]
    y_test = [posts[i].label for i in split.test]
    for (scheme, name), (vocab, model) in models.items():
        report = evaluate(model, transform(test_docs, vocab, scheme).matrix, y_test)
        stem = f"{scheme}__{name}"
        (report_dir / f"{stem}.json").write_text(report.to_json() + "\n", encoding="utf-8")
        (report_dir / f"{stem}.txt").write_text(
            report.to_text(title=f"{scheme} / {name}") + "\n", encoding="utf-8"
        )


def read_posts_csv(path: Path) -> list[Post]:
    return list(load_posts(path, CorpusSchema("text", "label", "id", ",")))


def read_tagged(path: Path) -> list[TaggedPost]:
    with path.open(encoding="utf-8") as fh:
        return [TaggedPost.from_json(line) for line in fh if line.strip()]


# --------------------------------------------------------------------------- pipeline

def file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _artifacts(out: Path) -> dict[str, str]:
    return {
        p.relative_to(out).as_posix(): file_digest(p)
        for p in sorted(out.rglob("*"))
        if p.is_file() and p.name != MANIFEST
    }


def run_pipeline(cfg: PipelineConfig) -> dict:
    """Run all eight stages, always leaving a manifest behind.

    Raises StageError after writing the manifest if a stage fails.
    """
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {
        "config": cfg.as_dict(),
        "config_hash": cfg.digest(),
        "versions": {
            "moh": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
        },
        "seed": cfg.seed,
        "stages": [],
        "status": "running",
    }
    state: dict = {}

    def run(stage, fn):
        start = time.perf_counter()
        try:
            result = fn()
        except Exception as exc:
            manifest["stages"].append({"name": stage, "status": "failed", "seconds": time.perf_counter() - start})
            manifest["status"] = "failed"
            manifest["failed_stage"] = stage
            manifest["error"] = str(exc)
            raise StageError(stage, exc) from exc
        manifest["stages"].append({"name": stage, "status": "ok", "seconds": time.perf_counter() - start})
        return result

    try:
        state["posts"] = run("clean", lambda: stage_clean(cfg, out))

        def tag():
            state["resources"] = load_resources(cfg)
            return stage_tag(state["posts"], state["resources"])

        state["tagged"] = run("tag", tag)
        state["rescued"] = run(
            "rescue", lambda: stage_rescue(state["tagged"], state["resources"], cfg, out)
        )
        state["transformed"] = run(
            "transform",
            lambda: stage_transform(state["rescued"], state["resources"].profanity_kb, cfg, out),
        )
        run("featurize", lambda: stage_featurize(state["transformed"], cfg, out))
        state["split"] = run("split", lambda: stage_split(state["transformed"], cfg, out))
        state["models"] = run("train", lambda: stage_train(state["transformed"], state["split"], cfg))
        run("evaluate", lambda: stage_evaluate(state["transformed"], state["split"], state["models"], out))
        manifest["status"] = "ok"
    finally:
        manifest["artifacts"] = _artifacts(out)
        (out / MANIFEST).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return manifest


# --------------------------------------------------------------------------- commands

def cmd_pipeline(args) -> int:
    cfg = build_config(args)
    cfg.validate()
    run_pipeline(cfg)
    print(f"pipeline finished; artifacts in {cfg.out}")
    return EXIT_OK


def cmd_build_kb(args) -> int:
    for p in list(args.pairs or []) + list(args.sentences or []) + [args.profanity, args.en_dict, args.hi_dict]:
        if p is not None and not Path(p).is_file():
            raise ValidationError(f"file not found: {p}")
    if not (args.pairs or args.sentences or args.profanity):
        raise ValidationError("give at least one --pairs, --sentences or --profanity source")
    en = Dictionary.load(args.en_dict, Language.ENGLISH)
    hi = Dictionary.load(args.hi_dict, Language.DEVANAGARI_HINDI)
    kb, report = build_kb(KbSources(args.pairs or [], args.sentences or [], args.profanity), en, hi)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_kb(kb, out)
    counts = report.counts()
    if args.report:
        Path(args.report).write_text(json.dumps(counts, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(json.dumps(counts, sort_keys=True))
    return EXIT_OK


def cmd_clean(args) -> int:
    cfg = build_config(args)
    cfg.validate(required=("corpus",))
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    posts = stage_clean(cfg, out)
    print(f"{len(posts)} posts -> {out / CLEANED}")
    return EXIT_OK


def cmd_tag(args) -> int:
    cfg = build_config(args)
    cfg.validate()
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    resources = load_resources(cfg)
    posts = read_posts_csv(cfg.corpus)
    tagged = stage_tag(posts, resources)
    if args.no_rescue:
        _write_lines(out / TAGGED, (p.to_json() for p in tagged))
    else:
        stage_rescue(tagged, resources, cfg, out)
    print(f"{len(tagged)} posts -> {out / TAGGED}")
    return EXIT_OK


def cmd_transform(args) -> int:
    cfg = build_config(args)
    cfg.validate(required=())
    tagged_path = Path(args.tagged)
    if not tagged_path.is_file():
        raise ValidationError(f"tagged file not found: {tagged_path}")
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    tagged = read_tagged(tagged_path)
    profanity_kb = load_pairs(cfg.profanity) if cfg.profanity else None
    stage_transform(tagged, profanity_kb, cfg, out)
    print(f"{len(tagged)} posts -> {out / TRANSFORMED}")
    return EXIT_OK


def cmd_featurize(args) -> int:
    cfg = build_config(args)
    cfg.validate(required=("corpus",))
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    stage_featurize(read_posts_csv(cfg.corpus), cfg, out)
    print(f"features -> {out / 'features'}")
    return EXIT_OK


def cmd_train_eval(args) -> int:
    cfg = build_config(args)
    cfg.validate(required=("corpus",))
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    posts = read_posts_csv(cfg.corpus)
    split = stage_split(posts, cfg, out)
    models = stage_train(posts, split, cfg)
    stage_evaluate(posts, split, models, out)
    for scheme, name in models:
        print((out / "reports" / f"{scheme}__{name}.txt").read_text(encoding="utf-8"))
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = build_config(args)
    cfg.validate(required=("kb", "en_dict", "hi_dict"))
    if args.text is None and cfg.corpus is None:
        raise ValidationError("give --text or --corpus")
    resources = load_resources(cfg)
    rules = load_rules(cfg)
    config = RescueConfig(cfg.threshold)

    def render(text: str) -> str:
        tokens = tag_text(clean_text(text), resources)
        if TransformVariant(cfg.variant) is TransformVariant.MOH:
            tokens = rescue_tokens(tokens, resources.kb, config)
        return simulate(cfg.variant, tokens, resources.profanity_kb, rules)

    if args.text is not None:
        print(render(args.text))
        return EXIT_OK
    posts = list(load_posts(cfg.corpus, cfg.schema()))
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    result = [Post(p.id, render(p.text), p.label) for p in posts]
    target = out / f"simulated_{cfg.variant}.csv"
    write_posts(result, target, _output_schema(cfg))
    print(f"{len(result)} posts -> {target}")
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value settings file; flags override it")
    p.add_argument("--corpus", help="input corpus (CSV/TSV with header)")
    p.add_argument("--kb", help="knowledge base TSV (roman<TAB>devanagari)")
    p.add_argument("--en-dict", dest="en_dict", help="English wordlist")
    p.add_argument("--hi-dict", dest="hi_dict", help="Devanagari Hindi wordlist")
    p.add_argument("--freq-en", dest="freq_en", help="English word<TAB>count table")
    p.add_argument("--freq-hi", dest="freq_hi", help="Roman-Hindi word<TAB>count table")
    p.add_argument("--profanity", help="profanity pair TSV")
    p.add_argument("--rules", help="character rule TSV for the indic variants")
    p.add_argument("--threshold", type=float, help="OOV rescue similarity threshold (default 0.70)")
    p.add_argument("--variant", choices=[v.value for v in TransformVariant])
    p.add_argument("--scheme", help=f"comma-separated feature schemes from {', '.join(SCHEMES)}")
    p.add_argument("--classifier", help="comma-separated classifiers: nb, logreg")
    p.add_argument("--seed", type=int)
    p.add_argument("--test-fraction", dest="test_fraction", type=float)
    p.add_argument("--text-column", dest="text_column")
    p.add_argument("--label-column", dest="label_column")
    p.add_argument("--id-column", dest="id_column")
    p.add_argument("--delimiter")
    p.add_argument("--out", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moh", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-kb", help="build and prune the knowledge base")
    p.add_argument("--pairs", nargs="*", default=[], help="roman<TAB>devanagari word-pair files, in priority order")
    p.add_argument("--sentences", nargs="*", default=[], help="sentence-pair files")
    p.add_argument("--profanity", help="profanity pair file")
    p.add_argument("--en-dict", dest="en_dict", required=True)
    p.add_argument("--hi-dict", dest="hi_dict", required=True)
    p.add_argument("--out", required=True, help="KB TSV to write")
    p.add_argument("--report", help="write build counts as JSON here")
    p.set_defaults(func=cmd_build_kb)

    for name, func, helptext in (
        ("clean", cmd_clean, "clean a corpus"),
        ("tag", cmd_tag, "tag cleaned posts and rescue OOV words"),
        ("transform", cmd_transform, "render tagged posts as text for a variant"),
        ("featurize", cmd_featurize, "export feature matrices"),
        ("train-eval", cmd_train_eval, "split, train and evaluate classifiers"),
        ("simulate", cmd_simulate, "render raw text under a transliteration variant"),
        ("pipeline", cmd_pipeline, "run every stage"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_common(p)
        if name == "tag":
            p.add_argument("--no-rescue", action="store_true", help="leave OOV tags in place")
        if name == "transform":
            p.add_argument("--tagged", required=True, help="tagged JSONL from `moh tag`")
        if name == "simulate":
            p.add_argument("--text", help="a single post to render")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
