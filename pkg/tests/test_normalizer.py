import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import Pipeline

from moh.classify import MultinomialNB
from moh.features import SurfaceVectorizer
from moh.langid import LanguageTag
from moh.normalizer import MoHNormalizer
from moh.transliterate import TransformVariant


def test_params_and_clone(resources_fx):
    norm = MoHNormalizer(resources_fx, variant="indic-p", threshold=0.6)
    params = norm.get_params()
    assert params["variant"] == "indic-p" and params["threshold"] == 0.6
    twin = clone(norm)
    assert twin.get_params()["variant"] == "indic-p" and twin.resources is resources_fx
    norm.set_params(variant="moh")
    assert norm.variant == "moh"


def test_fit_validates(resources_fx):
    with pytest.raises(TypeError):
        MoHNormalizer().fit()
    with pytest.raises(ValueError):
        MoHNormalizer(resources_fx, threshold=1.5).fit()
    with pytest.raises(ValueError):
        MoHNormalizer(resources_fx, variant="full-translate").fit()
    assert MoHNormalizer(resources_fx).fit().variant_ is TransformVariant.MOH


def test_table_row(resources_fx):
    out = MoHNormalizer(resources_fx).fit_transform(["Ramu suchha journalist h haramkor nahi!!"])
    assert out == ["रामू सच्चा journalist है हरामखोर नहीं"]


def test_rescue_only_for_moh(resources_fx):
    moh = MoHNormalizer(resources_fx).fit()
    indic = MoHNormalizer(resources_fx, variant="indic").fit()
    assert moh.tag("namste")[0].tag is LanguageTag.ROM_HINDI
    assert indic.tag("namste")[0].tag is LanguageTag.OOV
    assert moh.tag_unrescued("namste")[0].tag is LanguageTag.OOV


def test_inside_sklearn_pipeline(resources_fx):
    docs = ["tum bura chor ho", "tum accha dost ho", "bura neta chor", "accha dost bhai"] * 3
    y = ["HOF", "NOT", "HOF", "NOT"] * 3
    pipe = Pipeline(
        [("moh", MoHNormalizer(resources_fx)), ("vec", SurfaceVectorizer("count")), ("clf", MultinomialNB())]
    )
    pipe.fit(docs, y)
    assert list(pipe.predict(["bura chor"])) == ["HOF"]
    names = pipe.named_steps["vec"].get_feature_names_out()
    assert "चोर" in names and "chor" not in names
    assert pipe.get_params()["moh__variant"] == "moh"
    np.testing.assert_array_equal(clone(pipe).fit(docs, y).predict(docs), pipe.predict(docs))
