#!/usr/bin/env python3
"""Regenerates the bundled mini-corpus.

Writes kb.jsonl, trivia.jsonl and pages.jsonl, then runs the built-in
annotator (`trivia annotate`) over trivia and pages and merges the planted
gold labels into annotations.jsonl.

usage: build_mini.py path/to/trivia-binary
"""
import json
import pathlib
import subprocess
import sys

HERE = pathlib.Path(__file__).resolve().parent

FILMS = {
    "m_harbor": dict(name="The Silent Harbor", director=["Mara Ellison"],
                     writer=["Mara Ellison", "Tobias Renn"],
                     star=["Daniel Okafor", "Lena Voss"], year="2009"),
    "m_falcon": dict(name="Iron Falcon", director=["Victor Hale"],
                     writer=["Priya Natarajan"],
                     star=["Jack Moreno", "Elise Carter"], year="2012"),
    "m_orchard": dict(name="The Last Orchard", director=["Helen Marsh"],
                      writer=["Helen Marsh"],
                      star=["Owen Pike", "Rosa Lind"], year="2005"),
    "m_comet": dict(name="Comet Run", director=["Samuel Brooks"],
                    writer=["Nadia Fell"],
                    star=["Leo Grant", "Ivy Chen"], year="2015"),
    "m_winter": dict(name="Winter Circuit", director=["Karl Jensen"],
                     writer=["Karl Jensen"],
                     star=["Maya Ross", "Ben Adler"], year="2011"),
    "m_delta": dict(name="Delta Nights", director=["Grace Okoye"],
                    writer=["Paul Werner"],
                    star=["Sam Ortiz", "Nina Hart"], year="2008"),
    # held-out entities with pages
    "m_glacier": dict(name="Glacier Line", director=["Ana Ruiz"],
                      writer=["Ana Ruiz", "Colin Shaw"],
                      star=["Marcus Webb", "Julia Stone"], year="2013"),
    "m_lantern": dict(name="The Lantern Keeper", director=["Elliot Park"],
                      writer=["Hanna Berg"],
                      star=["Oscar Lane", "Mila Novak"], year="2010"),
}

# (text, interesting votes, total votes)
TRIVIA = {
    "m_harbor": [
        ("Daniel Okafor did all of his own stunt diving in the storm sequence.", 182, 200),
        ("Mara Ellison improvised the final lighthouse scene on the last day of shooting.", 141, 160),
        ("The film grossed $96,000,000 worldwide, the highest total in the history of the studio.", 170, 190),
        ("Lena Voss learned to sail for the role.", 30, 55),
        ("Tobias Renn wrote the first draft in three weeks.", 26, 50),
        ("The harbor set was built in a parking lot.", 22, 48),
        ("The film was shot in Halifax.", 4, 30),
        ("The trailer was released in March.", 3, 28),
        ("The soundtrack was released on CD.", 5, 40),
        ("Filming began in the spring.", 2, 25),
    ],
    "m_falcon": [
        ("Jack Moreno broke two ribs while performing a stunt on the bridge.", 160, 180),
        ("Victor Hale shot the longest chase in the film without any digital effects.", 150, 175),
        ("It was the most expensive film ever made in Portugal, costing $80,000,000.", 131, 150),
        ("Elise Carter improvised most of her lines in the hangar scene.", 120, 140),
        ("Priya Natarajan based the script on a story her grandfather told.", 28, 52),
        ("The cockpit was built from a real plane.", 25, 47),
        ("The premiere took place in Lisbon.", 3, 30),
        ("The DVD includes a commentary track.", 2, 26),
        ("The poster was designed by the studio.", 4, 33),
        ("The film was released in June.", 3, 35),
    ],
    "m_orchard": [
        ("Helen Marsh planted the entire orchard herself two years before shooting.", 171, 190),
        ("Owen Pike did his own stunt falls from the tallest tree on the farm.", 150, 170),
        ("The film earned $45,000,000, the biggest hit of the year for an independent film.", 139, 160),
        ("Rosa Lind spent a month living on a farm for the role.", 32, 60),
        ("The apple harvest scene took four days to film.", 27, 50),
        ("Helen Marsh cast local farmers as extras.", 30, 58),
        ("The film was shot in Oregon.", 5, 36),
        ("The score was recorded in London.", 3, 30),
        ("The film opened in October.", 2, 27),
        ("A novel based on the film was published.", 4, 31),
    ],
    "m_comet": [
        ("Leo Grant performed every stunt himself, including the longest jump in the film.", 165, 180),
        ("Samuel Brooks improvised the ending after the original set burned down.", 146, 165),
        ("Ivy Chen became the youngest actress to win the festival prize.", 158, 180),
        ("Nadia Fell wrote the script while working as a taxi driver.", 35, 62),
        ("The comet was built as a physical model.", 24, 49),
        ("The crew used three cameras for the race.", 22, 45),
        ("The film was released on DVD in May.", 3, 29),
        ("The trailer was released online.", 4, 34),
        ("The cast met for a reading in January.", 3, 28),
        ("The film was shot in Arizona.", 5, 40),
    ],
    "m_winter": [
        ("Karl Jensen drove the camera car himself during the fastest race scenes.", 158, 175),
        ("Maya Ross did her own stunt driving on a frozen lake.", 170, 190),
        ("The film grossed $60,000,000, the highest opening ever for a racing film.", 129, 150),
        ("Ben Adler improvised his argument with the mechanic.", 118, 140),
        ("Karl Jensen wrote the script over one winter.", 29, 55),
        ("The cars were borrowed from a museum.", 30, 57),
        ("The film was shot in Finland.", 4, 33),
        ("The soundtrack was released in December.", 3, 26),
        ("The film premiered in Helsinki.", 2, 24),
        ("The poster shows the main car.", 4, 32),
    ],
    "m_delta": [
        ("Grace Okoye shot the entire film at night, the longest night shoot in the history of the studio.", 162, 180),
        ("Sam Ortiz did all of his own stunt work in the boat chase.", 150, 170),
        ("Nina Hart improvised the song she sings at the wedding.", 140, 160),
        ("Paul Werner wrote the script in a single weekend.", 33, 60),
        ("The river scenes took two weeks to film.", 26, 50),
        ("The boats were rented from local fishermen.", 24, 48),
        ("The film was shot in Louisiana.", 4, 35),
        ("The film was released in August.", 2, 25),
        ("The DVD includes deleted scenes.", 3, 30),
        ("The score was recorded in Nashville.", 4, 34),
    ],
}

# Page blocks; paragraph sentences carry gold labels (1 = interesting).
PAGES = {
    "m_glacier": [
        ("infobox", "Directed by Ana Ruiz. Written by Ana Ruiz and Colin Shaw. Starring Marcus Webb and Julia Stone."),
        ("paragraph", [
            ("Glacier Line is a 2013 adventure film directed by Ana Ruiz.", 0),
            ("The film follows a surveyor who travels north to map a railway route.", 0),
            ("Marcus Webb plays the surveyor and Julia Stone plays his guide.", 0),
        ]),
        ("paragraph", [
            ("Marcus Webb did all of his own stunt climbing on the glacier.", 1),
            ("He later called the shoot the hardest work of his career.", 0),
            ("Ana Ruiz improvised the avalanche scene after a real snow slide hit the set.", 1),
            ("The crew spent six weeks in Norway.", 0),
            ("The film was shot with two cameras.", 0),
        ]),
        ("paragraph", [
            ("The film grossed $88,000,000 worldwide, the highest total ever for a film from the studio.", 1),
            ("It was the most expensive production in the history of Norwegian cinema.", 1),
            ("The film was released in November.", 0),
            ("The soundtrack was released on CD.", 0),
            ("It really reminds me of the old mountain films.", 0),
        ]),
        ("paragraph", [
            ("Julia Stone learned to drive a dog sled for the role.", 0),
            ("Colin Shaw wrote the script while working as a railway engineer.", 0),
            ("Julia Stone became the youngest actress to win the national film award.", 1),
            ("The trailer was released in September.", 0),
            ("The premiere took place in Oslo.", 0),
            ("She initially wanted to play the surveyor instead.", 0),
        ]),
        ("list", "Cast: Marcus Webb; Julia Stone; Erik Dahl"),
    ],
    "m_lantern": [
        ("infobox", "Directed by Elliot Park. Written by Hanna Berg. Starring Oscar Lane and Mila Novak."),
        ("paragraph", [
            ("The Lantern Keeper is a 2010 drama film directed by Elliot Park.", 0),
            ("The story follows a lighthouse keeper and his daughter on a remote island.", 0),
            ("Oscar Lane plays the keeper and Mila Novak plays his daughter.", 0),
        ]),
        ("paragraph", [
            ("Elliot Park built the lighthouse set on a real cliff, the tallest set in the history of the studio.", 1),
            ("Oscar Lane did his own stunt swimming in the freezing sea.", 1),
            ("He said the water was colder than anything he had felt.", 0),
            ("The film was shot in Scotland.", 0),
            ("The crew lived on the island for a month.", 0),
        ]),
        ("paragraph", [
            ("Mila Novak improvised the letter she reads at the funeral.", 1),
            ("The film earned $52,000,000, the biggest hit of the year for a drama.", 1),
            ("Hanna Berg wrote the script over two summers.", 0),
            ("The film was released in April.", 0),
            ("The DVD includes a commentary track.", 0),
        ]),
        ("paragraph", [
            ("The lantern used in the film was borrowed from a museum.", 0),
            ("The score was recorded in Glasgow.", 0),
            ("It was later adapted into a stage play.", 0),
            ("The poster was designed by the studio.", 0),
            ("The premiere took place in Edinburgh.", 0),
        ]),
        ("image_caption", "Oscar Lane on the cliff set"),
    ],
}


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")


def main():
    binary = sys.argv[1]
    kb = []
    for eid, f in FILMS.items():
        attrs = {"Director": f["director"], "Writer": f["writer"],
                 "Star": f["star"], "Year": [f["year"]]}
        kb.append({"entity_id": eid, "display_name": f["name"],
                   "aliases": [f["name"]], "attributes": attrs})
    write_jsonl(HERE / "kb.jsonl", kb)

    trivia = [{"entity_id": eid, "text": t, "votes_interesting": x,
               "votes_total": y, "source": "mini"}
              for eid, rows in TRIVIA.items() for (t, x, y) in rows]
    write_jsonl(HERE / "trivia.jsonl", trivia)

    pages, gold = [], {}
    for eid, blocks in PAGES.items():
        out = []
        for kind, body in blocks:
            if kind == "paragraph":
                out.append({"kind": kind, "text": " ".join(s for s, _ in body)})
                for s, label in body:
                    gold[(eid, s)] = label
            else:
                out.append({"kind": kind, "text": body})
        pages.append({"entity_id": eid, "blocks": out})
    write_jsonl(HERE / "pages.jsonl", pages)

    def annotate(flag, path):
        res = subprocess.run([binary, "annotate", flag, str(path), "--kb",
                              str(HERE / "kb.jsonl")], check=True,
                             capture_output=True, text=True)
        return [json.loads(line) for line in res.stdout.splitlines() if line]

    sentences = annotate("--trivia", HERE / "trivia.jsonl")
    page_sentences = annotate("--pages", HERE / "pages.jsonl")
    for s in page_sentences:
        key = (s["entity_id"], s["raw"])
        if key not in gold:
            sys.exit(f"sentence split disagrees with the fixture: {key}")
        s["gold_label"] = gold.pop(key)
    if gold:
        sys.exit(f"sentences never produced by the splitter: {sorted(gold)}")
    write_jsonl(HERE / "annotations.jsonl", sentences + page_sentences)


if __name__ == "__main__":
    main()
