import numpy as np
import pytest

from advtext.core.errors import ResourceFormatError, ResourceMissingError
from advtext.models.pos import PosTag
from advtext.resources.bundle import ResourceBundle, load_resources
from advtext.resources.charmaps import CharMaps, qwerty_neighbors
from advtext.resources.embeddings import EmbeddingStore
from advtext.resources.lexicons import InflectionTable, LexiconKind, PosLexicon, StopwordSet, SynonymLexicon
from advtext.datasets.toy import write_toy_resources


def test_nearest_neighbors_by_cosine(tiny_store):
    neighbors = tiny_store.nearest_neighbors("a", 2)
    assert [w for w, _ in neighbors] == ["b", "c"]
    assert neighbors[0][1] == pytest.approx(0.9 / np.sqrt(0.82))
    assert neighbors[1][1] == pytest.approx(0.0)


def test_nearest_neighbors_edge_cases(tiny_store):
    assert tiny_store.nearest_neighbors("a", 0) == []
    assert tiny_store.nearest_neighbors("zebra", 3) == []
    assert len(tiny_store.nearest_neighbors("a", 10)) == 2


def test_index_matches_brute_force():
    rng = np.random.default_rng(11)
    words = [f"w{i}" for i in range(40)]
    store = EmbeddingStore(words, rng.normal(size=(40, 5)), nn_index_size=5)
    for word in words[:10]:
        indexed = store.nearest_neighbors(word, 5)
        brute = sorted(
            ((other, store.cos_sim(word, other)) for other in words if other != word),
            key=lambda pair: -pair[1],
        )[:5]
        assert [w for w, _ in indexed] == [w for w, _ in brute]
        # past the index size the search falls back to a full scan
        assert [w for w, _ in store.nearest_neighbors(word, 8)][:5] == [w for w, _ in indexed]


def test_cos_sim_is_symmetric_and_bounded():
    rng = np.random.default_rng(5)
    store = EmbeddingStore(["x", "y", "z"], rng.normal(size=(3, 4)))
    assert store.cos_sim("x", "y") == pytest.approx(store.cos_sim("y", "x"))
    assert -1.0 <= store.cos_sim("x", "z") <= 1.0
    assert store.cos_sim("x", "x") == pytest.approx(1.0)
    assert store.cos_sim("x", "missing") is None


def test_load_embeddings(tmp_path):
    path = tmp_path / "vectors.txt"
    path.write_text("3 2\na 1.0 0.0\nb 0.9 0.1\nc 0.0 1.0\n", encoding="utf-8")
    store = EmbeddingStore.load(str(path))
    assert store.dim == 2
    assert len(store) == 3
    assert store.mse_dist("a", "c") == pytest.approx(2.0)


@pytest.mark.parametrize(
    "content, line",
    [
        ("a 1.0 0.0\nb 0.5\n", 2),
        ("a 1.0 0.0\nb x 1.0\n", 2),
        ("a 1.0 0.0\nb 0.0 1.0\na 1.0 1.0\n", 3),
        ("a\n", 1),
    ],
)
def test_malformed_embeddings_report_line(tmp_path, content, line):
    path = tmp_path / "bad.txt"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ResourceFormatError) as exc:
        EmbeddingStore.load(str(path))
    assert exc.value.line_number == line


def test_synonyms_filtered_by_pos():
    lexicon = SynonymLexicon({"good": [("fine", PosTag.ADJ), ("well", PosTag.ADV)]})
    assert lexicon.synonyms("good", PosTag.ADJ) == ["fine"]
    assert lexicon.synonyms("good") == ["fine", "well"]
    assert lexicon.synonyms("unknown") == []


def test_synonyms_exclude_headword_and_phrases():
    lexicon = SynonymLexicon({"Good": [("good", None), ("very good", None), ("nice", None)]})
    assert lexicon.synonyms("GOOD") == ["nice"]


def test_lexicon_file_round_trip(tmp_path):
    lexicon = SynonymLexicon({"good": [("fine", PosTag.ADJ), ("well", None)]}, LexiconKind.SEMEME)
    path = tmp_path / "sememes.tsv"
    lexicon.dump(str(path))
    loaded = SynonymLexicon.load(str(path), LexiconKind.SEMEME)
    assert loaded.kind == LexiconKind.SEMEME
    assert loaded.entries == lexicon.entries


def test_lexicon_unknown_tag_is_format_error(tmp_path):
    path = tmp_path / "thesaurus.tsv"
    path.write_text("good\tfine:ADJ\nbad\tpoor:NOPE\n", encoding="utf-8")
    with pytest.raises(ResourceFormatError) as exc:
        SynonymLexicon.load(str(path))
    assert exc.value.line_number == 2


def test_pos_lexicon_load(tmp_path):
    path = tmp_path / "pos.tsv"
    path.write_text("# comment\ndogs\tNOUN\nbark\tVERB|NOUN\n", encoding="utf-8")
    lexicon = PosLexicon.load(str(path))
    assert lexicon.tag("Bark") == PosTag.VERB
    assert lexicon.tags("bark") == (PosTag.VERB, PosTag.NOUN)
    assert lexicon.tag("cats") == PosTag.OTHER


def test_stopwords_are_case_insensitive():
    stopwords = StopwordSet(["The", "a"])
    assert "the" in stopwords
    assert "THE" in stopwords
    assert "cat" not in stopwords


def test_inflections_share_lemma_and_tag():
    table = InflectionTable({
        "love": [("love", PosTag.VERB), ("loves", PosTag.VERB), ("loved", PosTag.VERB)],
        "cast": [("cast", PosTag.NOUN), ("casts", PosTag.NOUN)],
    })
    assert table.inflections("loves") == ["love", "loved"]
    assert table.inflections("cast") == ["casts"]
    assert table.inflections("unknown") == []


def test_qwerty_neighbors():
    neighbors = qwerty_neighbors()
    assert set(neighbors["q"]) == {"w", "a", "1", "2"}
    assert "s" in neighbors["a"]
    assert all(key in neighbors[n] for key, ns in neighbors.items() for n in ns)


def test_default_charmaps_are_total():
    assert CharMaps().is_total()


def test_charmaps_override(tmp_path):
    path = tmp_path / "charmaps.json"
    path.write_text('{"homoglyphs": {"a": "@"}, "keyboard_neighbors": {"q": ["w"]}}', encoding="utf-8")
    maps = CharMaps.load(str(path))
    assert maps.homoglyph("a") == "@"
    assert maps.neighbors("Q") == ("w",)
    assert maps.homoglyph("b") == CharMaps().homoglyph("b")


def test_require_names_missing_resource():
    with pytest.raises(ResourceMissingError, match="embeddings"):
        ResourceBundle().require("embeddings", "test")


def test_toy_resources_round_trip_through_files(tmp_path, resources):
    write_toy_resources(str(tmp_path))
    loaded = load_resources(str(tmp_path))
    assert loaded.embeddings.words == resources.embeddings.words
    assert np.allclose(loaded.embeddings.vectors, resources.embeddings.vectors)
    assert loaded.thesaurus.entries == resources.thesaurus.entries
    assert loaded.sememes.kind == LexiconKind.SEMEME
    assert loaded.pos_lexicon.entries == resources.pos_lexicon.entries
    assert loaded.inflections.entries == resources.inflections.entries
    assert loaded.stopwords.words == resources.stopwords.words
