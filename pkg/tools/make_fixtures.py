#!/usr/bin/env python3
"""Regenerate the checked-in fixture corpus under tests/data/.

Builds a small hand-written SQuAD-v1.1-style sample (train + dev files),
annotates every paragraph with the exporter's builtin backend, and emits a
deterministic embedding file covering the fixture vocabulary. Run from the
repository root after changing fixture passages or the builtin annotator:

    python3 tools/make_fixtures.py

Requires both packages (answergen, annotate-export) to be installed.
The script asserts the properties the test-suite relies on, so a bad
regeneration fails here instead of in the tests.
"""

from __future__ import annotations

import hashlib
import json
import sys
import tempfile
from pathlib import Path

import numpy as np

REPO = Path(__file__).resolve().parent.parent
DATA = REPO / "tests" / "data"

# --- fixture corpus ---------------------------------------------------------
# (title, [(context, [(question, [answer texts...]), ...]), ...])
# Every answer must be an exact substring of its context; offsets are
# computed below with str.find.

TRAIN_ARTICLES = [
    (
        "Warsaw",
        [
            (
                "One of the most famous people born in Warsaw was Maria Skłodowska-Curie, "
                "who achieved international recognition for her research on radioactivity "
                "and was the first female recipient of the Nobel Prize. Famous musicians "
                "include Władysław Szpilman and Frédéric Chopin. Though Chopin was born in "
                "the village of Żelazowa Wola, about 60 km (37 mi) from Warsaw, he moved "
                "to the city with his family when he was seven months old. Casimir "
                "Pulaski, a Polish general and hero of the American Revolutionary War, "
                "was born here in 1745.",
                [
                    ("What was Maria Curie the first female recipient of?", ["Nobel Prize"]),
                    ("What year was Casimir Pulaski born in Warsaw?", ["1745"]),
                    (
                        "How old was Chopin when he moved to Warsaw with his family?",
                        ["seven months old"],
                    ),
                    (
                        "Who was one of the most famous people born in Warsaw?",
                        ["Maria Skłodowska-Curie"],
                    ),
                ],
            ),
            (
                "Warsaw is the capital and largest city of Poland. The metropolis stands "
                "on the Vistula in east-central Poland and its population is officially "
                "estimated at 1.8 million residents. The city rose to prominence in the "
                "late 16th century, when the royal court moved there from Kraków in 1596.",
                [
                    ("What river does Warsaw stand on?", ["Vistula"]),
                    ("How many residents does Warsaw officially have?", ["1.8 million"]),
                    ("When did the royal court move to Warsaw from Kraków?", ["1596"]),
                ],
            ),
            (
                "During World War II the city was largely destroyed, and about 85% of its "
                "buildings collapsed or were demolished. After the war, the Old Town was "
                "rebuilt from paintings and photographs, an effort that lasted until 1962.",
                [
                    ("What share of the buildings of Warsaw was destroyed?", ["85%"]),
                    ("Until what year did the rebuilding of the Old Town last?", ["1962"]),
                    ("During which conflict was Warsaw largely destroyed?", ["World War II"]),
                ],
            ),
        ],
    ),
    (
        "University_of_Notre_Dame",
        [
            (
                "Architecturally, the school has a Catholic character. Atop the Main "
                "Building is a golden statue of the Virgin Mary. Next to the Main "
                "Building is the Basilica of the Sacred Heart. Behind the basilica is "
                "the Grotto, a Marian place of prayer and reflection. It is a replica of "
                "the grotto at Lourdes, France where the Virgin Mary reputedly appeared "
                "to Saint Bernadette Soubirous in 1858.",
                [
                    (
                        "To whom did the Virgin Mary allegedly appear in 1858 in Lourdes?",
                        ["Saint Bernadette Soubirous"],
                    ),
                    ("What is the Grotto at Notre Dame?", ["a Marian place of prayer and reflection"]),
                    ("What sits atop the Main Building?", ["a golden statue of the Virgin Mary"]),
                ],
            ),
            (
                "The University of Notre Dame was founded in 1842 by Edward Sorin, a "
                "priest of the Congregation of Holy Cross. The school was established on "
                "524 acres near South Bend in Indiana. Its first main building opened in "
                "1844 and housed classrooms, a chapel and dormitories.",
                [
                    ("Who founded the University of Notre Dame?", ["Edward Sorin"]),
                    ("In what year was the University of Notre Dame founded?", ["1842"]),
                    ("On how much land was the school established?", ["524 acres"]),
                ],
            ),
        ],
    ),
    (
        "Amazon_rainforest",
        [
            (
                "The Amazon rainforest covers an area of 5,500,000 square kilometres "
                "across the territory of nine nations. The majority of the forest lies "
                "within Brazil, with 60% of the rainforest, followed by Peru with 13% "
                "and Colombia with 10%.",
                [
                    ("How large an area does the Amazon rainforest cover?", ["5,500,000 square kilometres"]),
                    ("Which nation holds the majority of the Amazon rainforest?", ["Brazil"]),
                    ("What share of the rainforest lies in Peru?", ["13%"]),
                ],
            ),
            (
                "The region is home to about 2.5 million insect species, tens of "
                "thousands of plants, and some 2,000 birds and mammals. One in ten known "
                "species in the world lives in the Amazon rainforest, the largest "
                "collection of plant and animal species in the world.",
                [
                    ("About how many insect species live in the region?", ["2.5 million"]),
                    ("How many birds and mammals live in the Amazon?", ["2,000"]),
                    (
                        "What fraction of known species lives in the Amazon rainforest?",
                        ["One in ten"],
                    ),
                ],
            ),
        ],
    ),
    (
        "Nikola_Tesla",
        [
            (
                "Nikola Tesla was born in 1856 in the village of Smiljan, in the Austrian "
                "Empire. He studied engineering at Graz and later moved to the United "
                "States in 1884, where he briefly worked with Thomas Edison before the "
                "two inventors parted ways.",
                [
                    ("In what year was Nikola Tesla born?", ["1856"]),
                    ("In what village was Tesla born?", ["Smiljan"]),
                    ("With which inventor did Tesla briefly work?", ["Thomas Edison"]),
                ],
            ),
            (
                "Tesla developed the alternating current system of electricity "
                "distribution, and his patents earned him considerable money. With "
                "George Westinghouse he won the contract to light the 1893 World's Fair "
                "in Chicago, a decisive moment for the adoption of alternating current.",
                [
                    (
                        "What system of electricity distribution did Tesla develop?",
                        ["the alternating current system", "alternating current"],
                    ),
                    ("With whom did Tesla win the contract for the 1893 fair?", ["George Westinghouse"]),
                ],
            ),
        ],
    ),
    (
        "Photosynthesis",
        [
            (
                "Photosynthesis is the process used by plants and other organisms to "
                "convert light energy into chemical energy. In most cases the process "
                "releases oxygen as a byproduct and stores energy in molecules of "
                "glucose, a simple sugar made from carbon dioxide and water.",
                [
                    ("What gas does photosynthesis release as a byproduct?", ["oxygen"]),
                    ("In what molecule does photosynthesis store energy?", ["glucose"]),
                    (
                        "What is glucose made from?",
                        ["carbon dioxide and water"],
                    ),
                ],
            ),
            (
                "The green pigment chlorophyll absorbs the light used in "
                "photosynthesis. Chlorophyll sits inside organelles called "
                "chloroplasts, which are most abundant in the cells of plant leaves. "
                "About 70% of the oxygen in the atmosphere of the Earth comes from "
                "algae and other aquatic organisms.",
                [
                    ("What pigment absorbs the light used in photosynthesis?", ["chlorophyll"]),
                    ("Inside what organelles does chlorophyll sit?", ["chloroplasts"]),
                    ("What share of atmospheric oxygen comes from algae?", ["70%", "About 70%"]),
                ],
            ),
        ],
    ),
    (
        "Mount_Everest",
        [
            (
                "Mount Everest is the highest mountain on Earth, with a summit of 8,848 "
                "metres above sea level. The mountain stands on the border between Nepal "
                "and Tibet, and its summit was first reached in 1953 by Edmund Hillary "
                "and Tenzing Norgay.",
                [
                    ("How tall is the summit of Mount Everest?", ["8,848 metres"]),
                    ("On the border of which regions does Everest stand?", ["Nepal and Tibet"]),
                    ("In what year was the summit of Everest first reached?", ["1953"]),
                ],
            ),
            (
                "Climbers on the mountain face dangers from altitude sickness, weather and "
                "wind. By 2019 the mountain had been climbed by more than 4,000 people, "
                "while about 300 climbers have died on its slopes, many of whom remain "
                "on the mountain.",
                [
                    ("How many people had climbed Everest by 2019?", ["more than 4,000", "4,000"]),
                    ("About how many climbers have died on Everest?", ["300"]),
                ],
            ),
        ],
    ),
    (
        "Industrial_Revolution",
        [
            (
                "The Industrial Revolution was the transition to new manufacturing "
                "processes in Great Britain and the United States, in the period from "
                "about 1760 to sometime between 1820 and 1840. The textile industry was "
                "the first to use modern production methods.",
                [
                    ("Around what year did the Industrial Revolution begin?", ["1760"]),
                    ("Which industry was the first to use modern production methods?", ["The textile industry", "textile"]),
                ],
            ),
            (
                "The improved steam engine of James Watt turned coal into rotary motion "
                "for mills and factories. Steam power allowed a factory to operate away "
                "from rivers, and output of goods rose at an unprecedented rate during "
                "the 19th century.",
                [
                    ("Whose improved steam engine powered the mills?", ["James Watt"]),
                    ("What did the steam engine of James Watt turn into rotary motion?", ["coal"]),
                ],
            ),
        ],
    ),
    (
        "Great_Barrier_Reef",
        [
            (
                "The Great Barrier Reef is the largest coral reef system in the world, "
                "composed of over 2,900 individual reefs and 900 islands that stretch "
                "for over 2,300 kilometres off the coast of Queensland, Australia.",
                [
                    ("For how many kilometres does the Great Barrier Reef stretch?", ["2,300 kilometres", "over 2,300 kilometres"]),
                    ("Off the coast of which state does the reef lie?", ["Queensland"]),
                    ("How many individual reefs compose the system?", ["2,900"]),
                ],
            ),
            (
                "The reef structure is built by billions of tiny organisms, known as "
                "coral polyps. The Great Barrier Reef supports a wide diversity of life "
                "and was selected as a World Heritage Site in 1981.",
                [
                    ("What tiny organisms build the reef structure?", ["coral polyps"]),
                    ("In what year was the reef selected as a World Heritage Site?", ["1981"]),
                ],
            ),
        ],
    ),
    (
        "Penicillin",
        [
            (
                "Penicillin was discovered in 1928 by Alexander Fleming, a Scottish "
                "physician who worked at St Mary's Hospital in London. Fleming observed "
                "that a mold of the genus Penicillium stopped the growth of bacteria on "
                "a discarded culture plate.",
                [
                    ("Who discovered penicillin?", ["Alexander Fleming"]),
                    ("In what year was penicillin discovered?", ["1928"]),
                    ("A mold of which genus stopped the growth of bacteria?", ["Penicillium"]),
                ],
            ),
            (
                "Mass production of the drug began during World War II, after Howard "
                "Florey and Ernst Chain developed methods for growing the mold in "
                "quantity. Penicillin saved thousands of soldiers from infected wounds "
                "and earned the three scientists a Nobel Prize in 1945.",
                [
                    ("During which conflict did mass production of penicillin begin?", ["World War II"]),
                    ("What prize did the three scientists earn in 1945?", ["a Nobel Prize", "Nobel Prize"]),
                ],
            ),
        ],
    ),
    (
        "Solar_System",
        [
            (
                "The Solar System consists of the Sun and the objects that orbit it, "
                "including eight planets, their moons, and smaller bodies. The Sun "
                "contains 99.86% of the mass of the Solar System, and Jupiter holds "
                "most of the remaining mass.",
                [
                    ("How many planets orbit the Sun?", ["eight", "eight planets"]),
                    ("What share of the mass of the Solar System sits in the Sun?", ["99.86%"]),
                    ("Which planet holds most of the remaining mass?", ["Jupiter"]),
                ],
            ),
            (
                "The four inner planets are Mercury, Venus, Earth and Mars. They are "
                "called terrestrial planets because their surfaces are solid rock. The "
                "four outer planets are giant planets, substantially more massive than "
                "the terrestrial ones.",
                [
                    ("What are the four inner planets called?", ["terrestrial planets"]),
                    ("Why are the inner planets called terrestrial?", ["their surfaces are solid rock"]),
                ],
            ),
        ],
    ),
]

_OXYGEN_CONTEXT = (
    "Oxygen is a chemical element with symbol O and atomic number 8. It is a "
    "member of the chalcogen group on the periodic table and is a highly "
    "reactive nonmetal and oxidizing agent that readily forms compounds "
    "(notably oxides) with most elements. By mass, oxygen is the third-most "
    "abundant element in the universe, after hydrogen and helium. At standard "
    "temperature and pressure, two atoms of the element bind to form "
    "dioxygen, a colorless and odorless diatomic gas with the formula O2. "
    "Diatomic oxygen gas constitutes 20.8% of the Earth's atmosphere. "
    "However, monitoring of atmospheric oxygen levels show a global downward "
    "trend, because of fossil-fuel burning. Oxygen is the most abundant "
    "element by mass in the Earth's crust as part of oxide compounds such as "
    "silicon dioxide, making up almost half of the crust's mass."
)

DEV_ARTICLES = [
    (
        "Oxygen",
        [
            (
                _OXYGEN_CONTEXT,
                [
                    ("What is the atomic number of the element oxygen?", ["8"]),
                    ("Of what group is oxygen a member?", ["chalcogen", "the chalcogen group"]),
                    (
                        "Where does oxygen rank in abundance among elements in the universe?",
                        ["third-most", "third"],
                    ),
                    ("How many atoms of the element bind to form dioxygen?", ["two atoms", "two"]),
                    ("What do two atoms of oxygen form?", ["dioxygen"]),
                    ("What constitutes 20.8% of the Earth's atmosphere?", ["Diatomic oxygen gas"]),
                    ("How much of the Earth's atmosphere is diatomic oxygen gas?", ["20.8%"]),
                    ("What is the trend of atmospheric oxygen levels?", ["downward"]),
                    ("Oxygen forms what kind of compounds in the Earth's crust?", ["oxide"]),
                    ("How much of the crust's mass involves oxygen compounds?", ["almost half"]),
                    ("What element is the most abundant by mass in the Earth's crust?", ["Oxygen"]),
                ],
            ),
            (
                "Oxygen was discovered independently by Carl Wilhelm Scheele in Uppsala "
                "in 1773 and by Joseph Priestley in England in 1774. Priestley published "
                "his findings first, and the name oxygen was coined in 1777 by Antoine "
                "Lavoisier, a French chemist.",
                [
                    ("Who discovered oxygen in Uppsala?", ["Carl Wilhelm Scheele"]),
                    ("In what year did Joseph Priestley discover oxygen?", ["1774"]),
                    ("Who coined the name oxygen?", ["Antoine Lavoisier"]),
                ],
            ),
            (
                "Oxygen is commonly used in the production of steel, plastics and "
                "textiles, and in life support aboard aircraft, submarines and "
                "spacecraft. "
                "Oxygen therapy treats patients whose lungs cannot take in enough of "
                "the gas on their own.",
                [
                    ("The production of what metal is a common use of oxygen?", ["steel"]),
                    ("What therapy treats patients with weak lungs?", ["Oxygen therapy"]),
                ],
            ),
        ],
    ),
    (
        "Marie_Curie",
        [
            (
                "Marie Curie was born in Warsaw in 1867 and studied physics in Paris, "
                "where she met her husband Pierre Curie. She was the first woman to win "
                "a Nobel Prize and remains the only person to win Nobel Prizes in two "
                "different sciences.",
                [
                    ("In what city was Marie Curie born?", ["Warsaw"]),
                    ("In what year was Marie Curie born?", ["1867"]),
                    ("Whom did Marie Curie meet in Paris?", ["Pierre Curie"]),
                ],
            ),
            (
                "Together with her husband, Curie discovered the elements polonium and "
                "radium in 1898. She named polonium after Poland, the country of her "
                "birth, and received her second Nobel Prize in 1911 for the discovery.",
                [
                    ("What elements did the Curies discover in 1898?", ["polonium and radium"]),
                    ("After what country did Curie name polonium?", ["Poland"]),
                    ("When did Curie receive her second Nobel Prize?", ["1911"]),
                ],
            ),
        ],
    ),
    (
        "Eiffel_Tower",
        [
            (
                "The Eiffel Tower was completed in 1889 as the entrance arch to the "
                "World's Fair in Paris. The structure was designed by the engineer "
                "Gustave Eiffel and stands 330 metres tall, roughly the height of a "
                "building of 81 storeys.",
                [
                    ("In what year was the Eiffel Tower completed?", ["1889"]),
                    ("Who designed the Eiffel Tower?", ["Gustave Eiffel"]),
                    ("How tall does the Eiffel Tower stand?", ["330 metres"]),
                ],
            ),
            (
                "The tower held the record as the tallest man-made structure in the "
                "world for 41 years, until the Chrysler Building in New York was "
                "finished in 1930. About 7 million visitors climb or ride to its "
                "platforms every year.",
                [
                    ("For how many years did the tower hold the height record?", ["41 years", "41"]),
                    ("Which building surpassed the Eiffel Tower in 1930?", ["the Chrysler Building", "Chrysler Building"]),
                    ("About how many visitors come every year?", ["7 million"]),
                ],
            ),
        ],
    ),
    (
        "Honey_bee",
        [
            (
                "A honey bee colony contains a single queen, tens of thousands of "
                "workers, and a few hundred drones. The queen lays up to 2,000 eggs per "
                "day during spring, and worker bees forage for nectar and pollen within "
                "5 kilometres of the hive.",
                [
                    ("How many queens does a honey bee colony contain?", ["a single queen", "single"]),
                    ("How many eggs per day can the queen lay in spring?", ["2,000"]),
                    ("Within what distance of the hive do workers forage?", ["5 kilometres"]),
                ],
            ),
            (
                "Returning foragers perform the waggle dance, a figure-eight movement "
                "that tells other bees the direction and distance of food. The dance "
                "was decoded by Karl von Frisch, who received a Nobel Prize for the "
                "discovery in 1973.",
                [
                    ("What dance do returning foragers perform?", ["the waggle dance", "waggle dance"]),
                    ("Who decoded the waggle dance?", ["Karl von Frisch"]),
                    ("In what year did the decoder of the dance receive a Nobel Prize?", ["1973"]),
                ],
            ),
        ],
    ),
    (
        "Moon_landing",
        [
            (
                "Apollo 11 was the American spaceflight that first landed humans on the "
                "Moon. Neil Armstrong and Buzz Aldrin landed the lunar module Eagle on "
                "20 July 1969, while Michael Collins flew the command module Columbia "
                "alone in lunar orbit.",
                [
                    ("What spaceflight first landed humans on the Moon?", ["Apollo 11"]),
                    ("Who flew the command module Columbia?", ["Michael Collins"]),
                    ("On what date did the lunar module Eagle land?", ["20 July 1969"]),
                ],
            ),
            (
                "Armstrong spent about two and a half hours outside the spacecraft, and "
                "together the astronauts collected 21.5 kilograms of lunar material to "
                "bring back to Earth. A worldwide audience of 650 million people "
                "watched the first steps on television.",
                [
                    ("How much lunar material did the astronauts collect?", ["21.5 kilograms"]),
                    ("How many people watched the first steps on television?", ["650 million"]),
                ],
            ),
        ],
    ),
    (
        "Danube",
        [
            (
                "The Danube is the second-longest river in Europe, flowing for 2,850 "
                "kilometres from the Black Forest in Germany to the Black Sea. The "
                "river passes through ten countries, more than any other river in the "
                "world, and four capital cities stand on its banks.",
                [
                    ("For how many kilometres does the Danube flow?", ["2,850 kilometres", "2,850"]),
                    ("Through how many countries does the Danube pass?", ["ten", "ten countries"]),
                    ("Into what sea does the Danube flow?", ["the Black Sea", "Black Sea"]),
                ],
            ),
            # deliberate duplicate context with different questions: exercises
            # passage dedup and gold merging on the dev side
            (
                "The Danube is the second-longest river in Europe, flowing for 2,850 "
                "kilometres from the Black Forest in Germany to the Black Sea. The "
                "river passes through ten countries, more than any other river in the "
                "world, and four capital cities stand on its banks.",
                [
                    ("How many capital cities stand on the banks of the Danube?", ["four", "four capital cities"]),
                    ("In what mountain range does the Danube rise?", ["the Black Forest", "Black Forest"]),
                ],
            ),
        ],
    ),
]


def build_squad(articles) -> dict:
    data = []
    qa_counter = 0
    for title, paragraphs in articles:
        para_entries = []
        for context, qas in paragraphs:
            qa_entries = []
            for question, answers in qas:
                qa_counter += 1
                answer_entries = []
                for answer in answers:
                    start = context.find(answer)
                    assert start >= 0, f"answer {answer!r} not in context of {title}"
                    answer_entries.append({"text": answer, "answer_start": start})
                qa_entries.append(
                    {
                        "question": question,
                        "id": f"fixture-{qa_counter:04d}",
                        "answers": answer_entries,
                    }
                )
            para_entries.append({"context": context, "qas": qa_entries})
        data.append({"title": title, "paragraphs": para_entries})
    return {"version": "1.1", "data": data}


def word_vector(word: str, dim: int = 32) -> np.ndarray:
    """Deterministic unit-ish vector derived from the word itself."""
    seed = int.from_bytes(hashlib.sha256(word.encode("utf-8")).digest()[:8], "big")
    rng = np.random.default_rng(seed)
    vec = rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


def main() -> int:
    from annotate_export.backends import BuiltinBackend
    from annotate_export.export import (
        corpus_vocabulary,
        export_annotations,
        export_embeddings,
    )

    DATA.mkdir(parents=True, exist_ok=True)
    train_path = DATA / "squad_train_sample.json"
    dev_path = DATA / "squad_dev_sample.json"
    train_path.write_text(
        json.dumps(build_squad(TRAIN_ARTICLES), indent=1, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    dev_path.write_text(
        json.dumps(build_squad(DEV_ARTICLES), indent=1, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )

    backend = BuiltinBackend()
    export_annotations(train_path, DATA / "annotations_train.jsonl", backend)
    export_annotations(dev_path, DATA / "annotations_dev.jsonl", backend)

    # embedding source covers the fixture vocabulary plus a few extra words,
    # so the subsetting step is actually exercised
    vocab = sorted(corpus_vocabulary(train_path) | corpus_vocabulary(dev_path))
    extras = ["zebra", "quasar", "unrelatedword"]
    dim = 32
    with tempfile.TemporaryDirectory() as tmp:
        source = Path(tmp) / "vectors_full.txt"
        with source.open("w", encoding="utf-8") as fh:
            fh.write(f"{len(vocab) + len(extras)} {dim}\n")
            for word in vocab + extras:
                values = " ".join(f"{v:.6f}" for v in word_vector(word, dim))
                fh.write(f"{word} {values}\n")
        export_embeddings(train_path, source, DATA / "embeddings.txt")

    _sanity_check(train_path, dev_path)
    print("fixtures written to", DATA)
    return 0


def _sanity_check(train_path: Path, dev_path: Path):
    """Assert the fixture properties the test-suite relies on."""
    from answergen import (
        candidate_universe,
        extract_chunks,
        extract_entities,
        load_annotations,
        load_squad,
        merge_chunks,
    )

    train = load_squad(train_path)
    dev = load_squad(dev_path)
    ann_train = load_annotations(DATA / "annotations_train.jsonl", train)
    ann_dev = load_annotations(DATA / "annotations_dev.jsonl", dev)
    assert len(ann_train) == sum(1 for _ in train.paragraphs())
    assert len(ann_dev) == sum(1 for _ in dev.paragraphs())

    oxy = ann_dev["Oxygen::0"]
    assert "Oxygen" in {c.text for c in extract_entities(oxy)}
    assert "Diatomic oxygen gas" in {c.text for c in extract_chunks(oxy)}

    marian = ann_train["University_of_Notre_Dame::0"]
    merged = {c.text for c in merge_chunks(marian, extract_chunks(marian))}
    assert "a Marian place of prayer and reflection" in merged, sorted(merged)

    for ann in list(ann_train.values()) + list(ann_dev.values()):
        pool = candidate_universe(ann)
        assert pool, f"empty candidate pool for {ann.paragraph_id}"


if __name__ == "__main__":
    sys.exit(main())
