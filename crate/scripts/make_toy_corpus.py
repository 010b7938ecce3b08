#!/usr/bin/env python3
"""Writes the bundled toy topics under crates/core/testdata/.

Sentences are written as bracketed constituents with bare words; the script
tags the words, emits PTB trees, and derives the document text from the
same leaves so that trees and text never disagree.

A bare word of the form `he#calder` is a pronoun mention of entity `calder`
(recorded in mentions.json for topics that ship one).
"""

import json
import re
import sys
from pathlib import Path

DETS = {"a", "an", "the", "its", "their", "this", "these", "those", "some", "all", "each", "both", "no", "such"}
PRONOUNS = {"he", "she", "it", "they", "we", "i", "you", "him", "her", "them", "us"}
MODALS = {"will", "would", "could", "can", "may", "might", "should", "must", "shall"}
ADVERBS = {"also", "still", "not", "later", "again", "now", "slightly", "openly", "early", "overnight"}
CONJ = {"and", "but", "or"}
NUMBERS = {"two", "three", "four", "five", "seven", "nine", "ten", "twelve", "fifty", "forty", "hundred", "thousand",
           "million", "seventy", "eighteen", "half", "hundreds"}
PUNCT = {",", ".", ":", ";"}


def parse(spec):
    tokens = re.findall(r"\(|\)|[^\s()]+", spec)
    pos = 0

    def node():
        nonlocal pos
        assert tokens[pos] == "("
        pos += 1
        label = tokens[pos]
        pos += 1
        children = []
        while tokens[pos] != ")":
            if tokens[pos] == "(":
                children.append(node())
            else:
                children.append(tokens[pos])
                pos += 1
        pos += 1
        return (label, children)

    tree = node()
    assert pos == len(tokens), spec
    return tree


def tag(word, parent, index):
    w = word.split("#")[0]
    lw = w.lower()
    if w in PUNCT:
        return w
    if lw in CONJ:
        return "CC"
    if lw == "to":
        return "TO"
    if lw in MODALS:
        return "MD"
    if lw in ADVERBS:
        return "RB"
    if parent == "VP":
        return "VBD"
    if parent in ("PP", "SBAR") and index == 0:
        return "IN"
    if parent == "ADJP":
        return "JJ"
    if parent == "PRT":
        return "RP"
    if lw in DETS:
        return "PRP$" if lw in ("its", "their") else "DT"
    if lw in PRONOUNS:
        return "PRP"
    if lw in NUMBERS or w.isdigit():
        return "CD"
    if w[0].isupper():
        return "NNP"
    return "NN"


def to_ptb(tree):
    label, children = tree
    parts = []
    for i, c in enumerate(children):
        if isinstance(c, tuple):
            parts.append(to_ptb(c))
        else:
            parts.append(f"({tag(c, label, i)} {c.split('#')[0]})")
    return f"({label} {' '.join(parts)})"


def leaves(tree):
    _, children = tree
    out = []
    for c in children:
        out.extend(leaves(c) if isinstance(c, tuple) else [c])
    return out


def detok(words):
    text = ""
    for w in words:
        w = w.split("#")[0]
        if text and w not in PUNCT:
            text += " "
        text += w
    return text


def write_topic(root, topic):
    out = root / topic["id"]
    (out / "docs").mkdir(parents=True, exist_ok=True)
    (out / "parses").mkdir(exist_ok=True)
    meta = {
        "id": topic["id"],
        "length_budget_words": topic["budget"],
        "documents": [{"id": d["id"], "timestamp": d["timestamp"]} for d in topic["docs"]],
    }
    if not topic.get("mentions_file"):
        meta["entities"] = [{"type": e["type"], "names": e["names"]} for e in topic["entities"]]
    (out / "topic.json").write_text(json.dumps(meta, indent=2) + "\n")

    clusters = []
    for d in topic["docs"]:
        text_lines, ptb_lines = [], []
        per_entity = {e["key"]: [] for e in topic["entities"]}
        for p, paragraph in enumerate(d["paragraphs"]):
            if p:
                text_lines.append("")
            for spec in paragraph:
                tree = parse(spec)
                ws = leaves(tree)
                sid = f"{d['id']}-{len(ptb_lines)}"
                text_lines.append(detok(ws))
                ptb_lines.append(f"( {to_ptb(tree)} )")
                plain = [w.split("#")[0] for w in ws]
                for e in topic["entities"]:
                    names = sorted((n.split() for n in e["names"]), key=len, reverse=True)
                    i = 0
                    while i < len(plain):
                        hit = next((n for n in names if plain[i:i + len(n)] == n), None)
                        if hit:
                            per_entity[e["key"]].append(
                                {"sentence_id": sid, "start": i, "end": i + len(hit), "surface": " ".join(hit)})
                            i += len(hit)
                        else:
                            i += 1
                for i, w in enumerate(ws):
                    if "#" in w:
                        word, key = w.split("#")
                        per_entity[key].append(
                            {"sentence_id": sid, "start": i, "end": i + 1, "surface": word, "is_pronoun": True})
        (out / "docs" / f"{d['id']}.txt").write_text("\n".join(text_lines) + "\n")
        (out / "parses" / f"{d['id']}.ptb").write_text("\n".join(ptb_lines) + "\n")
        for e in topic["entities"]:
            ms = sorted(per_entity[e["key"]], key=lambda m: (int(m["sentence_id"].rsplit("-", 1)[1]), m["start"]))
            if ms:
                clusters.append({"doc_id": d["id"], "entity_type": e["type"], "mentions": ms})
    if topic.get("mentions_file"):
        (out / "mentions.json").write_text(json.dumps(clusters, indent=2) + "\n")
    if topic.get("comments"):
        (out / "comments.txt").write_text("\n".join(topic["comments"]) + "\n")
    if topic.get("gold"):
        (out / "gold").mkdir(exist_ok=True)
        for i, g in enumerate(topic["gold"]):
            (out / "gold" / f"ref{i + 1}.txt").write_text(g + "\n")


TOPICS = [
    {
        "id": "harbor-fire",
        "budget": 60,
        "entities": [
            {"key": "okafor", "type": "Person", "names": ["Fire Chief Maria Okafor", "Maria Okafor", "Okafor"]},
            {"key": "kelby", "type": "Location", "names": ["Port of Kelby"]},
            {"key": "authority", "type": "Organization", "names": ["Harbor Authority"]},
        ],
        "docs": [
            {"id": "d1", "timestamp": 1000, "paragraphs": [[
                "(S (NP A large fire) (VP destroyed (NP a grain warehouse) (PP at (NP the Port of Kelby)) (PP on (NP Monday night))) .)",
                "(S (NP Fire Chief Maria Okafor) (VP said (SBAR that (S (NP the blaze) (VP started (PP in (NP a storage room)) (PP near (NP the loading dock)))))) .)",
            ], [
                "(S (NP Four firefighters) (VP were (VP treated (PP for (NP smoke inhalation)) (PP at (NP the city hospital)))) .)",
                "(S (NP The Harbor Authority) (VP closed (NP two shipping berths) (PP as (NP a precaution))) .)",
                "(S (NP Residents) (VP reported (NP thick black smoke) (PP over (NP (NP the eastern districts) (PP of (NP the city))))) .)",
            ]]},
            {"id": "d2", "timestamp": 2000, "paragraphs": [[
                "(S (NP Investigators) (VP believe (SBAR that (S (NP faulty wiring) (VP caused (NP the warehouse fire) (PP at (NP the Port of Kelby)))))) .)",
                "(S (NP Fire Chief Maria Okafor) (VP said (SBAR that (S (NP the building) (VP had (VP failed (NP two safety inspections) (PP in (NP the past year))))))) .)",
                "(S (NP The fire) (VP destroyed (NP (NP about ten thousand tons) (PP of (NP export grain))) (PP according (PP to (NP the Harbor Authority)))) .)",
            ], [
                "(S (NP Shipping companies) (VP warned (SBAR that (S (NP the closure) (VP could (VP delay (NP grain exports) (PP for (NP several weeks))))))) .)",
                "(S (NP (NP The owner) (PP of (NP the warehouse))) (VP declined (S (VP to (VP comment (PP on (NP the inspection reports)))))) .)",
            ]]},
            {"id": "d3", "timestamp": 3000, "paragraphs": [[
                "(S (NP The Harbor Authority) (VP reopened (NP the two berths) (PP on (NP Wednesday)) (PP after (NP a safety review))) .)",
                "(S (NP Fire Chief Maria Okafor) (VP called (PP for (NP stricter electrical inspections)) (PP at (NP all port warehouses))) .)",
                "(S (NP The four injured firefighters) (VP have (VP left (NP the hospital))) .)",
            ], [
                "(S (NP City officials) (VP (VP promised (NP an independent inquiry)) (CC and) (VP pledged (NP funds) (PP for (NP new fire equipment)))) .)",
                "(S (NP Grain prices) (VP rose (ADVP slightly) (PP in (NP regional markets)) (PP after (NP the fire))) .)",
                "(S (NP Okafor) (VP said (SBAR that (S (NP the fire department) (VP needed (NP more inspectors) (PP for (NP the port area)))))) .)",
            ]]},
        ],
        "comments": [
            "The warehouse failed two safety inspections and nobody shut it down.",
            "Faulty wiring in an old warehouse is a disaster waiting to happen.",
            "Why were the inspection reports ignored by the port?",
            "Stricter electrical inspections should have happened years ago.",
            "Thank you to the firefighters who were treated for smoke inhalation.",
            "Grain exports will suffer for weeks because of this fire.",
            "The owner should answer for the failed inspections.",
            "Hope the independent inquiry looks at the wiring.",
        ],
        "gold": [
            "A fire destroyed a grain warehouse at the Port of Kelby on Monday night. Investigators believe faulty wiring "
            "caused the fire, and the building had failed two safety inspections. Four firefighters were treated for smoke "
            "inhalation. The Harbor Authority closed two berths, which reopened on Wednesday. Fire Chief Maria Okafor called "
            "for stricter electrical inspections at port warehouses.",
            "Faulty wiring is blamed for a Monday night fire that destroyed a grain warehouse and about ten thousand tons of "
            "export grain at the Port of Kelby. The warehouse had failed two safety inspections in the past year. Fire Chief "
            "Maria Okafor urged stricter inspections, and city officials promised an independent inquiry.",
        ],
    },
    {
        "id": "river-flood",
        "budget": 60,
        "entities": [
            {"key": "brandt", "type": "Person", "names": ["Governor Alan Brandt", "Alan Brandt", "Brandt"]},
            {"key": "tessel", "type": "Location", "names": ["Tessel River"]},
            {"key": "marlow", "type": "Location", "names": ["Marlow"]},
        ],
        "docs": [
            {"id": "d1", "timestamp": 100, "paragraphs": [[
                "(S (NP The Tessel River) (VP burst (NP its banks) (PP after (NP (NP three days) (PP of (NP heavy rain))))) .)",
                "(S (NP Floodwater) (VP covered (NP (NP the center) (PP of (NP (NP the town) (PP of (NP Marlow))))) (PP on (NP Saturday))) .)",
            ], [
                "(S (NP Emergency crews) (VP evacuated (NP more than two thousand residents) (PP from (NP (NP low areas) (PP near (NP the river))))) .)",
                "(S (NP Governor Alan Brandt) (VP declared (NP (NP a state) (PP of (NP emergency))) (PP for (NP the whole valley))) .)",
            ]]},
            {"id": "d2", "timestamp": 200, "paragraphs": [[
                "(S (NP Officials) (VP said (SBAR that (S (NP (NP a controlled release) (PP from (NP the upstream dam))) (VP raised (NP the river) (PP by (NP two meters)))))) .)",
                "(S (NP Governor Alan Brandt) (VP defended (NP the dam release) (PP as (NP (NP the only way) (S (VP to (VP prevent (NP a dam failure))))))) .)",
            ], [
                "(S (NP Rescue teams) (VP searched (PP for (NP two missing people)) (PP along (NP the flooded river road))) .)",
                "(S (NP Brandt) (VP ordered (NP (NP an independent review) (PP of (NP (NP the dam release) (PP on (NP Saturday)))))) .)",
                "(S (NP (NP Shelters) (PP in (NP nearby schools))) (VP housed (NP (NP hundreds) (PP of (NP evacuated families))) (ADVP overnight)) .)",
            ]]},
            {"id": "d3", "timestamp": 300, "paragraphs": [[
                "(S (NP The Tessel River) (VP began (S (VP to (VP recede (PP on (NP Monday)) (PP after (NP the heavy rain)))))) .)",
                "(S (NP Rescue teams) (VP found (NP the two missing people) (ADJP alive) (PP in (NP (NP a farmhouse) (PP near (NP Marlow))))) .)",
                "(S (NP Governor Alan Brandt) (VP promised (NP emergency funds) (PP for (NP (NP flooded homes and businesses) (PP in (NP Marlow))))) .)",
            ], [
                "(S (NP (NP Residents) (PP of (NP Marlow))) (VP criticized (NP the dam release) (PP for (NP (NP the lack) (PP of (NP warning))))) .)",
                "(S (NP Engineers) (VP will (VP inspect (NP the upstream dam) (PP before (NP the next storm season)))) .)",
            ]]},
        ],
        "comments": [
            "Nobody warned us about the dam release until the water was at our door.",
            "The dam release flooded Marlow and the governor calls it the only way.",
            "Glad the two missing people were found alive.",
            "Why was there no warning before the dam release?",
            "Brandt should visit Marlow and see the damage himself.",
            "Emergency funds are welcome but the dam needs a full inspection.",
            "Three days of rain and the river rose two meters overnight.",
        ],
        "gold": [
            "The Tessel River burst its banks after three days of heavy rain, flooding the town of Marlow. More than two "
            "thousand residents were evacuated and Governor Alan Brandt declared a state of emergency. A controlled release "
            "from the upstream dam raised the river by two meters. Residents criticized the release for the lack of warning. "
            "Two missing people were found alive.",
            "Heavy rain and a dam release flooded Marlow on Saturday. Emergency crews evacuated over two thousand residents "
            "and two missing people were later found alive near Marlow. Governor Alan Brandt defended the dam release and "
            "promised emergency funds, but residents complained that no warning was given.",
        ],
    },
    {
        "id": "vaccine-trial",
        "budget": 60,
        "entities": [
            {"key": "norvale", "type": "Organization", "names": ["Norvale Labs"]},
            {"key": "raman", "type": "Person", "names": ["Priya Raman", "Raman"]},
        ],
        "docs": [
            {"id": "d1", "timestamp": 10, "paragraphs": [[
                "(S (NP Norvale Labs) (VP reported (SBAR that (S (NP its malaria vaccine) (VP cut (NP infections) (PP by (NP seventy percent)) (PP in (NP a large trial)))))) .)",
                "(S (NP The trial) (VP enrolled (NP twelve thousand children) (PP in (NP four African countries))) .)",
            ], [
                "(S (NP Lead researcher Priya Raman) (VP called (NP the results) (NP (NP a major step) (PP against (NP the disease)))) .)",
                "(S (NP The company) (VP plans (S (VP to (VP seek (NP regulatory approval) (PP by (NP (NP the end) (PP of (NP the year)))))))) .)",
            ]]},
            {"id": "d2", "timestamp": 20, "paragraphs": [[
                "(S (NP Independent experts) (VP (VP welcomed (NP the trial results)) (CC but) (VP urged (NP caution) (PP about (NP long term protection)))) .)",
                "(S (NP Priya Raman) (VP said (SBAR that (S (NP protection) (VP remained (ADJP strong) (PP for (NP at least eighteen months)))))) .)",
            ], [
                "(S (NP Side effects) (VP were (ADJP mild) (PP in (NP most children))) .)",
                "(S (NP Health groups) (VP asked (NP Norvale Labs) (S (VP to (VP keep (NP the vaccine price) (ADJP low) (PP for (NP poor countries)))))) .)",
            ]]},
            {"id": "d3", "timestamp": 30, "paragraphs": [[
                "(S (NP Norvale Labs) (VP said (SBAR that (S (NP the vaccine) (VP would (VP cost (NP about three dollars) (PP per (NP dose))))))) .)",
                "(S (NP The company) (VP will (VP build (NP a new factory) (S (VP to (VP produce (NP fifty million doses) (NP each year)))))) .)",
            ], [
                "(S (NP Priya Raman) (VP said (SBAR that (S (NP the first doses) (VP could (VP reach (NP clinics) (PP within (NP two years))))))) .)",
                "(S (NP Malaria) (VP kills (NP more than half a million people) (NP each year) (PP according (PP to (NP health officials)))) .)",
            ]]},
        ],
        "comments": [
            "Three dollars per dose is the best news in this story.",
            "Keep the vaccine price low so poor countries can afford it.",
            "Seventy percent fewer infections would save so many children.",
            "Will Norvale really keep the price low after approval?",
            "A new factory for fifty million doses each year is exactly what is needed.",
            "Long term protection is the real question.",
        ],
        "gold": [
            "Norvale Labs reported that its malaria vaccine cut infections by seventy percent in a trial of twelve thousand "
            "children in four African countries. Lead researcher Priya Raman said protection lasted at least eighteen months. "
            "The company will seek approval by the end of the year, expects a price of about three dollars per dose, and will "
            "build a factory for fifty million doses a year.",
            "A malaria vaccine from Norvale Labs reduced infections by seventy percent in a large trial. Experts welcomed the "
            "results but urged caution about long term protection. Norvale Labs said the vaccine would cost about three "
            "dollars per dose, and health groups asked the company to keep the price low for poor countries.",
        ],
    },
    {
        "id": "rail-strike",
        "budget": 60,
        "entities": [
            {"key": "union", "type": "Organization", "names": ["Transit Workers Union"]},
            {"key": "varga", "type": "Person", "names": ["Tomas Varga", "Varga"]},
            {"key": "cho", "type": "Person", "names": ["Transport Minister Helen Cho", "Helen Cho", "Cho"]},
        ],
        "docs": [
            {"id": "d1", "timestamp": 5, "paragraphs": [[
                "(S (NP Rail workers) (VP began (NP a national strike) (PP on (NP Tuesday)) (PP over (NP pay and working hours))) .)",
                "(S (NP The strike) (VP halted (NP most passenger and freight trains) (PP across (NP the country))) .)",
            ], [
                "(S (NP Transit Workers Union leader Tomas Varga) (VP said (SBAR that (S (NP members) (VP would (VP stay (PP off (NP work)) (PP for (NP three days))))))) .)",
                "(S (NP Commuters) (VP crowded (NP buses and roads) (PP in (NP the capital)) (PP during (NP the morning rush))) .)",
            ]]},
            {"id": "d2", "timestamp": 15, "paragraphs": [[
                "(S (NP Transport Minister Helen Cho) (VP (VP called (NP the strike) (ADJP unjustified)) (CC and) (VP urged (NP the union) (S (VP to (VP return (PP to (NP talks))))))) .)",
                "(S (NP The union) (VP is (VP demanding (NP a nine percent pay rise) (PP over (NP two years)))) .)",
            ], [
                "(S (NP The government) (VP has (VP offered (NP four percent) (PP with (NP (NP new limits) (PP on (NP overtime)))))) .)",
                "(S (NP Business groups) (VP estimated (SBAR that (S (NP the strike) (VP costs (NP the economy) (NP forty million dollars) (NP a day))))) .)",
            ]]},
            {"id": "d3", "timestamp": 25, "paragraphs": [[
                "(S (NP Tomas Varga) (VP said (SBAR that (S (NP the union) (VP would (VP meet (NP Helen Cho) (PP on (NP Friday)) (PP for (NP new talks))))))) .)",
                "(S (NP Limited train services) (VP resumed (PP on (NP some commuter lines)) (PP on (NP Thursday))) .)",
            ], [
                "(S (NP Passenger groups) (VP called (PP for (NP (NP compensation) (PP for (NP cancelled season tickets))))) .)",
                "(S (NP Both sides) (VP said (SBAR that (S (NP a deal) (VP was (ADJP possible) (PP before (NP the weekend)))))) .)",
            ]]},
        ],
        "comments": [
            "A nine percent pay rise is fair after years of frozen wages.",
            "Four percent with overtime limits is an insult to rail workers.",
            "I could not get to work and the buses were packed.",
            "Cho should stop calling the strike unjustified and offer a real pay rise.",
            "Forty million dollars a day lost is a lot for a pay dispute.",
            "Hope the Friday talks end the strike.",
        ],
        "gold": [
            "Rail workers began a national strike on Tuesday over pay and working hours, halting most trains across the "
            "country. The Transit Workers Union is demanding a nine percent pay rise over two years, while the government "
            "has offered four percent. Transport Minister Helen Cho called the strike unjustified. Union leader Tomas Varga "
            "will meet Cho on Friday for new talks.",
            "A national rail strike over pay halted passenger and freight trains. The union wants a nine percent rise and the "
            "government offered four percent with overtime limits. Business groups say the strike costs forty million "
            "dollars a day. Both sides said a deal was possible before the weekend after talks on Friday.",
        ],
    },
    {
        "id": "museum-theft",
        "budget": 60,
        "mentions_file": True,
        "entities": [
            {"key": "museum", "type": "Organization", "names": ["Aldmoor Museum"]},
            {"key": "calder", "type": "Person", "names": ["Inspector Rhys Calder", "Rhys Calder", "Calder"]},
            {"key": "voss", "type": "Person", "names": ["Elena Voss"]},
        ],
        "docs": [
            {"id": "d1", "timestamp": 50, "paragraphs": [[
                "(S (NP Thieves) (VP stole (NP a famous painting) (PP from (NP the Aldmoor Museum)) (ADVP early (PP on (NP Sunday)))) .)",
                "(S (NP The stolen work) (VP is (NP (NP a landscape) (PP by (NP Elena Voss)) (VP valued (PP at (NP five million euros))))) .)",
            ], [
                "(S (NP Inspector Rhys Calder) (VP said (SBAR that (S (NP the thieves) (VP entered (PP through (NP a roof window)) (PP at (NP night)))))) .)",
                "(S (NP The museum) (VP will (VP remain (ADJP closed) (PP during (NP the police investigation)))) .)",
            ]]},
            {"id": "d2", "timestamp": 60, "paragraphs": [[
                "(S (NP Police) (VP released (NP (NP security camera images) (PP of (NP two masked suspects))) (PP on (NP Monday))) .)",
                "(S (NP Inspector Rhys Calder) (VP said (SBAR that (S (NP the alarm system) (VP had (VP been (VP switched (PRT off) (PP for (NP repairs)))))))) .)",
            ], [
                "(S (NP (NP The director) (PP of (NP the Aldmoor Museum))) (VP apologized (PP for (NP the security failure))) .)",
                "(S (NP Calder) (VP said (SBAR that (S (NP police) (VP were (VP studying (NP (NP footage) (PP from (NP nearby streets)))))))) .)",
                "(S (NP Art experts) (VP warned (SBAR that (S (NP such a famous painting) (VP would (VP be (ADJP impossible (S (VP to (VP sell (ADVP openly)))))))))) .)",
            ]]},
            {"id": "d3", "timestamp": 70, "paragraphs": [[
                "(S (NP Police) (VP arrested (NP two men) (PP in (NP a port city)) (PP on (NP Wednesday))) .)",
                "(S (NP Inspector Rhys Calder) (VP said (SBAR that (S (NP he#calder) (VP was (ADJP hopeful (SBAR that (S (NP the painting) (VP would (VP be (VP recovered)))))))))) .)",
            ], [
                "(S (NP The museum) (VP announced (NP (NP a review) (PP of (NP its security systems))) (PP after (NP the theft))) .)",
                "(S (NP Insurers) (VP offered (NP (NP a reward) (PP of (NP two hundred thousand euros))) (PP for (NP information))) .)",
            ]]},
        ],
        "comments": [
            "The alarm was switched off for repairs and nobody guarded the roof window?",
            "How can a museum leave the alarm system off during repairs?",
            "Hope the painting by Elena Voss is recovered soon.",
            "The director should resign over this security failure.",
            "A reward of two hundred thousand euros might bring the painting back.",
            "Switching off the alarm system was an open invitation to thieves.",
        ],
        "gold": [
            "Thieves stole a landscape by Elena Voss valued at five million euros from the Aldmoor Museum on Sunday. "
            "Inspector Rhys Calder said the thieves entered through a roof window while the alarm system was switched off "
            "for repairs. Police arrested two men on Wednesday and insurers offered a reward for information.",
            "A painting by Elena Voss worth five million euros was stolen from the Aldmoor Museum. The alarm system had "
            "been switched off for repairs, and the museum director apologized for the security failure. Two men were "
            "arrested in a port city, and Inspector Rhys Calder was hopeful the painting would be recovered.",
        ],
    },
]

# Comments concentrate on one late news sentence.
SENSITIVITY = {
    "id": "library-hours",
    "budget": 40,
    "entities": [{"key": "westbrook", "type": "Location", "names": ["Westbrook"]}],
    "docs": [
        {"id": "d1", "timestamp": 1, "paragraphs": [[
            "(S (NP The town council) (VP voted (S (VP to (VP close (NP the Westbrook branch library) (PP at (NP (NP the end) (PP of (NP March)))))))) .)",
            "(S (NP Council members) (VP said (SBAR that (S (NP the closure) (VP would (VP save (NP about two hundred thousand dollars) (NP a year)))))) .)",
        ], [
            "(S (NP The library building) (VP will (VP be (VP sold (PP to (NP a private developer))))) .)",
            "(S (NP Books and computers) (VP will (VP move (PP to (NP (NP the main library) (PP in (NP the town center)))))) .)",
        ], [
            "(S (NP The branch) (VP also (VP offered (NP evening study hours) (PP for (NP (NP students) (PP from (NP the nearby high school)))))) .)",
        ]]},
        {"id": "d2", "timestamp": 2, "paragraphs": [[
            "(S (NP Library staff) (VP will (VP transfer (PP to (NP other branches)) (PP in (NP the spring)))) .)",
            "(S (NP The council) (VP plans (S (VP to (VP use (NP the savings) (PP for (NP road repairs)))))) .)",
        ]]},
    ],
    "comments": [
        "Where will students go for evening study hours now?",
        "The evening study hours were the only quiet place for high school students.",
        "High school students need those evening study hours.",
        "Closing evening study hours hurts students the most.",
        "My kids used the evening study hours every week.",
    ],
}


def main():
    base = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "crates/core/testdata"
    for t in TOPICS:
        write_topic(base / "topics", t)
    write_topic(base / "sensitivity", SENSITIVITY)


if __name__ == "__main__":
    main()
