"""Shipped inventory fixtures.

Three layers:

* ``region_table()`` — the 28 states and 8 union territories.
* ``curated_rows()`` — a small hand-written sub-fixture of real artifacts used
  by example-level and golden tests.
* ``synthetic_inventory_rows()`` — a deterministic 700-row inventory (curated
  rows + cross-region twin entities + generated artifacts) with the corpus
  shape parameters: 36 regions, 13 categories, every generated artifact's clue
  passing the non-specificity check via at least one same-template twin in
  another region.

The generator is seeded with a fixed constant: the fixture is an artifact, not
a knob. ``forge fixtures`` writes the same bytes every time.
"""

from __future__ import annotations

import random
from pathlib import Path

from .graph import CATEGORIES, CultureGraph
from .ingest import (
    InventoryRow,
    Region,
    build_region_table,
    ingest_inventory,
    normalize_slug,
    write_inventory_csv,
    write_regions_csv,
)
from .text import content_stems

_FIXTURE_SEED = 20260809

STATES = (
    "Andhra Pradesh", "Arunachal Pradesh", "Assam", "Bihar", "Chhattisgarh",
    "Goa", "Gujarat", "Haryana", "Himachal Pradesh", "Jharkhand", "Karnataka",
    "Kerala", "Madhya Pradesh", "Maharashtra", "Manipur", "Meghalaya",
    "Mizoram", "Nagaland", "Odisha", "Punjab", "Rajasthan", "Sikkim",
    "Tamil Nadu", "Telangana", "Tripura", "Uttar Pradesh", "Uttarakhand",
    "West Bengal",
)

UNION_TERRITORIES = (
    "Andaman and Nicobar Islands", "Chandigarh",
    "Dadra and Nagar Haveli and Daman and Diu", "Delhi", "Jammu and Kashmir",
    "Ladakh", "Lakshadweep", "Puducherry",
)


def region_table() -> list[Region]:
    entries = [(name, "state") for name in STATES]
    entries += [(name, "union_territory") for name in UNION_TERRITORIES]
    return build_region_table(entries)


def _row(state: str, name: str, attribute: str, descriptor: str) -> InventoryRow:
    return InventoryRow(
        source_link=f"https://example.org/culture/{normalize_slug(name)}",
        state=state,
        artifact_name=name,
        descriptor=descriptor,
        attribute=attribute,
    )


def curated_rows() -> list[InventoryRow]:
    """Hand-written artifacts whose descriptors drive the golden tests."""
    return [
        _row(
            "Jharkhand", "Baha Parab", "festivals",
            "The spring festival of the Santhal tribe, Baha Parab marks the worship "
            "of nature with songs and flowering sal blossoms.",
        ),
        _row(
            "Jharkhand", "Dhooska", "cuisine",
            "Dhooska is a savoury fried bread made primarily from powdered rice, "
            "popular in Jharkhand.",
        ),
        _row(
            "Jharkhand", "Pathalgadi Movement", "history",
            "A tribal assertion of village autonomy marked by carved stone plaques, "
            "the Pathalgadi Movement spread across many villages of Jharkhand.",
        ),
        _row(
            "West Bengal", "Garad saree", "costume",
            "The Garad saree is a traditional white silk saree of West Bengal.",
        ),
        _row(
            "West Bengal", "Mishti doi", "cuisine",
            "Mishti doi is famous as a fermented sweet made with milk and sugar or "
            "jaggery, from West Bengal.",
        ),
        _row(
            "Uttarakhand", "Ramman festival", "festivals",
            "The Ramman festival is a ritual theatre of the Garhwal villages of "
            "Uttarakhand.",
        ),
        _row(
            "Uttarakhand", "Har ki Pauri", "tourism",
            "Har ki Pauri is located on the banks of the Ganges and considered one "
            "of the most important pilgrimage sites, the pride of Uttarakhand.",
        ),
        _row(
            "Arunachal Pradesh", "Khamti Pottery", "art",
            "Khamti Pottery is a craft of hand built clay vessels shaped by women "
            "of the Tai Khamti community, practised in Arunachal Pradesh.",
        ),
        _row(
            "Arunachal Pradesh", "Yugang Bamboo Altars", "festivals",
            "Sacred bamboo altars of the Nyishi tribe erected during the Nyokum "
            "festival, where the Nyokum goddess is the principal deity.",
        ),
        _row(
            "Karnataka", "Mysore Dasara", "festivals",
            "Mysore Dasara is a royal festival of caparisoned elephant processions "
            "and an illuminated palace, celebrated across Karnataka.",
        ),
        _row(
            "Karnataka", "Mysore Pak", "cuisine",
            "A type of mithai prepared with only three ingredients: ghee, sugar and besan.",
        ),
        _row(
            "Karnataka", "Maddur Vada specialty", "cuisine",
            "A savoury fritter-type snack made of rice flour, semolina and maida "
            "flour mixed with onion, curry leaves, green chillies, grated coconut, "
            "cashews / groundnuts, ghee, salt, and asafoetida. The onion and curry "
            "leaves are fried and then mixed with water to make a soft dough, which "
            "is made into patties and deep fried.",
        ),
        _row(
            "Delhi", "New Delhi", "cities",
            "New Delhi is the capital city of India.",
        ),
    ]


def twin_rows() -> list[InventoryRow]:
    """Cross-region descriptor twins for the curated target artifacts.

    A clue passes the non-specificity check only when it also matches a
    same-category artifact in another region, so each curated answer entity
    gets one.
    """
    return [
        _row(
            "Assam", "Chaulpitha", "cuisine",
            "Chaulpitha is a savoury fried bread made primarily from powdered rice, "
            "popular in Assam.",
        ),
        _row(
            "Odisha", "Mitha Dahi", "cuisine",
            "Mitha Dahi is famous as a fermented sweet made with milk and sugar or "
            "jaggery, from Odisha.",
        ),
        _row(
            "Uttar Pradesh", "Dashashwamedh Ghat", "tourism",
            "Dashashwamedh Ghat is located on the banks of the Ganges and considered "
            "one of the most important pilgrimage sites, the pride of Uttar Pradesh.",
        ),
        _row(
            "Tamil Nadu", "Tirunelveli Halwa", "cuisine",
            "A type of mithai prepared with only three ingredients: wheat, sugar and ghee.",
        ),
    ]


# -- synthetic artifact generation -------------------------------------------

_GIVEN_ONSETS = (
    "Vel", "Kor", "Tham", "Mir", "San", "Ran", "Dev", "Kal", "Bhu", "Chan",
    "Nil", "Pav", "Tar", "Am", "Jiv", "Kes", "Lok", "Man", "Nar", "Omk",
    "Ruk", "Sav", "Tung", "Ud", "Van", "Yash", "Zar", "Ind",
)
_GIVEN_VOWELS = ("a", "e", "i", "o", "u")
_GIVEN_CODAS = (
    "ri", "pur", "gram", "vati", "nad", "kot", "ghar", "der", "wad", "bar",
    "than", "pal", "ser", "mukh", "dia", "lon",
)

_CATEGORY_NOUNS: dict[str, tuple[str, ...]] = {
    "history": ("Uprising", "Accord", "Revolt", "Chronicle", "Treaty", "March"),
    "tourism": ("Fort", "Caves", "Gardens", "Palace", "Falls", "Steps"),
    "cuisine": ("Pitha", "Halwa", "Bhaat", "Laddu", "Kheer", "Chutney"),
    "costume": ("Saree", "Shawl", "Turban", "Weave", "Choli", "Angarkha"),
    "language": ("Boli", "Bhasha", "Lipi", "Vaani"),
    "art": ("Painting", "Pottery", "Carving", "Embroidery", "Masks", "Puppetry"),
    "festivals": ("Mela", "Utsav", "Jatra", "Parva", "Vrat", "Yatra"),
    "religion": ("Shrine", "Math", "Aarti", "Sampraday", "Deul", "Gompa"),
    "medicine": ("Kadha", "Lep", "Tailam", "Churna", "Rasayana", "Arishta"),
    "transport": ("Ferry", "Cart", "Tonga", "Shikara", "Tram", "Doli"),
    "cities": (),  # city names are the bare given word
    "sports": ("Kusti", "Regatta", "Dangal", "Khel", "Daud", "Akhada"),
    "personalities": ("Devi", "Rao", "Das", "Bai", "Nath", "Pillai"),
}

# Body vocabulary: five slots combine into "<a> <b> of <c> known for <d> and <e>".
_BODY_POOLS: dict[str, tuple[tuple[str, ...], ...]] = {
    "history": (
        ("a little recorded", "a fiercely debated", "a widely taught",
         "a quietly pivotal", "a long remembered", "an oath bound"),
        ("frontier uprising", "grain tax revolt", "village assembly movement",
         "border accord", "salt levy protest", "artisan guild strike"),
        ("the colonial survey years", "the princely succession era",
         "the famine relief decade", "the railway expansion age",
         "the early print press period", "the land reform years"),
        ("torchlit night meetings", "hand copied pamphlets",
         "barefoot courier relays", "drum signalled gatherings",
         "sealed palm leaf petitions", "granary blockades"),
        ("a negotiated amnesty", "a rewritten charter",
         "an annual memorial fair", "a restored village commons",
         "a vow of unity", "a public record of names"),
    ),
    "tourism": (
        ("a cliff perched", "a moated", "a terraced", "a lantern lit",
         "a monsoon fed", "a pilgrim thronged"),
        ("hill citadel", "stepwell complex", "orchid sanctuary",
         "riverside promenade", "echoing cavern shrine", "royal hunting lodge"),
        ("carved basalt balconies", "seven cascading pools",
         "mirror inlay corridors", "whispering banyan courts",
         "painted ceiling vaults", "salt white ramparts"),
        ("sunrise conch processions", "winter birding flotillas",
         "torch guided night walks", "monsoon mist viewings",
         "full moon boat fairs", "ropeway garland offerings"),
        ("a resident heron colony", "a centuries old sundial",
         "an underground spring", "a gallery of donor plaques",
         "a twin bell gateway", "a restored drawbridge"),
    ),
    "cuisine": (
        ("a slow simmered", "a stone ground", "a clay pot", "a smoke kissed",
         "a festival day", "a dawn market"),
        ("lentil porridge", "jackfruit curry", "millet flatbread",
         "banana stem stir fry", "tamarind broth", "puffed rice medley"),
        ("hand pounded spice pastes", "cold pressed mustard oil",
         "stone flower seasoning", "charred gourd ribbons",
         "fire roasted chillies", "fresh turmeric shavings"),
        ("a sour fruit finish", "a jaggery caramel glaze",
         "a crackling curry leaf tempering", "a fermented batter tang",
         "a toasted sesame crust", "a ghee whipped topping"),
        ("a copper serving ladle", "a plantain leaf platter",
         "a brass tiffin ritual", "a shared courtyard hearth",
         "a festival eve prelude", "a travelling vendor cry"),
    ),
    "costume": (
        ("a double dyed", "a temple border", "a mirror studded",
         "a hand spun", "a bride gifted", "a loom reversible"),
        ("ceremonial drape", "festival bodice", "courtly sash",
         "harvest dance skirt", "elder honour robe", "initiation stole"),
        ("indigo resist patterning", "zari threadwork medallions",
         "tasselled hem bells", "seed pearl latticework",
         "natural madder reds", "ikat flame motifs"),
        ("a nine yard wrap style", "a shoulder knot clasp",
         "a reversible winter weave", "a dowry chest fold",
         "a monsoon wax finish", "a dance swirl cut"),
        ("a weaver lineage mark", "a coming of age gifting",
         "a shrine offering custom", "a bridal procession role",
         "a harvest fair debut", "a clan colour code"),
    ),
    "language": (
        ("a tonal", "a courtly", "a riverine", "a market bridging",
         "a ballad rich", "a script sharing"),
        ("hill dialect", "trade creole", "ritual register",
         "boatmen argot", "pastoral tongue", "border lingua"),
        ("whistled field calls", "reduplicated verb play",
         "honourific ladders", "loaned seafaring terms",
         "drummed syllable codes", "archaic court particles"),
        ("call and response epics", "riddle contests",
         "lullaby chain rhymes", "proverb duels",
         "harvest work chants", "string puppet narrations"),
        ("a revived script press", "a radio story hour",
         "a school primer revival", "a festival oratory prize",
         "a travelling bard circuit", "a dictionary of idioms"),
    ),
    "art": (
        ("a scroll based", "a soot pigment", "a palm leaf", "a wall fresco",
         "a dowry chest", "a festival mask"),
        ("narrative painting school", "terracotta relief craft",
         "bell metal casting guild", "mirror mosaic tradition",
         "reed mat weaving style", "shadow puppet atelier"),
        ("crushed river shell whites", "lamp black outlines",
         "beeswax resist layers", "powdered glass shimmer",
         "ochre and indigo fields", "gilded border scrolls"),
        ("epic episode panels", "monsoon courtship scenes",
         "guardian beast figures", "granary blessing motifs",
         "ancestor procession friezes", "celestial map medallions"),
        ("a master apprentice oath", "a seasonal firing ritual",
         "a temple car commission", "a travelling exhibition cart",
         "a pigment grinding song", "a signature knot emblem"),
    ),
    "festivals": (
        ("a torch led", "a tide timed", "a first harvest", "a masked night",
         "a nine day", "a river bank"),
        ("gratitude feast", "ancestor homecoming", "cattle garlanding rite",
         "boat race carnival", "effigy bonfire vigil", "flower carpet week"),
        ("communal millet brewing", "balanced lamp towers",
         "stilt drummer troupes", "painted bull parades",
         "kite duel afternoons", "swing hung courtyards"),
        ("a midnight drum relay", "a shared granary meal",
         "a bamboo pole climb", "a lantern release hour",
         "a veiled dance circle", "a vow thread exchange"),
        ("a closing peace oath", "a seed blessing dawn",
         "a village gate unveiling", "a year account reading",
         "a twin village visit", "a charity cauldron"),
    ),
    "religion": (
        ("a cliff cut", "a lamp blackened", "a spring fed", "a drum called",
         "a silence keeping", "a pilgrim staged"),
        ("forest hermitage order", "ancestral grove rite",
         "lamp offering custom", "monastic debate court",
         "healing well shrine", "oracle mask ceremony"),
        ("turmeric anointed thresholds", "knotted vow threads",
         "conch and cymbal calls", "fasting moon calendars",
         "circumambulation paths", "first fruit altars"),
        ("a whispered lineage mantra", "a footwear free mile",
         "a grain share tithe", "a night long recitation",
         "a mirror veiled sanctum", "a seasonal silence week"),
        ("a shared kitchen hall", "a dispute mediation seat",
         "an adopted guardian deity", "a rain petition rite",
         "a lamp wick guild", "a pilgrim ledger"),
    ),
    "medicine": (
        ("a monsoon brewed", "a copper vessel", "a dawn gathered",
         "a smoke cured", "a grandmother taught", "a temple dispensed"),
        ("bitter herb decoction", "warm oil therapy", "river clay poultice",
         "fermented tonic", "steam tent regimen", "bone setting practice"),
        ("wild tuber extracts", "crushed moringa pods",
         "black salt infusions", "forest honey bases",
         "dried lichen powders", "cold pressed neem"),
        ("a three dose sunrise course", "a pulse reading diagnosis",
         "a massage stroke sequence", "a dietary pairing chart",
         "a seasonal detox window", "a chant timed preparation"),
        ("a healer apprenticeship", "a village dispensary day",
         "a harvest ailment ledger", "a midwife exchange network",
         "a salve trading fair", "a patient gratitude wall"),
    ),
    "transport": (
        ("a rope guided", "a reed hulled", "a twin oared", "a bell signalled",
         "a monsoon only", "a market day"),
        ("river crossing raft", "gorge spanning basket line",
         "palm log canoe run", "bullock caravan route",
         "hill switchback service", "lagoon poling circuit"),
        ("woven cane passenger seats", "counterweight pulley stations",
         "painted prow talismans", "relayed horn signals",
         "tide chart timetables", "salt bag ballasting"),
        ("a ferryman call register", "a pilgrim season surge",
         "a flood month detour", "a lantern led night leg",
         "a shared toll basket", "a repair beaching week"),
        ("a boatwright guild", "a crossing blessing rite",
         "a cargo of festival goods", "a postal satchel duty",
         "a wedding party charter", "a school run tradition"),
    ),
    "cities": (
        ("a walled", "a river fork", "a caravan era", "a twin hill",
         "a loom famed", "a spice gate"),
        ("market town", "granary junction", "weaver quarter settlement",
         "pilgrim rest town", "foundry township", "orchard ringed town"),
        ("arcaded bazaar lanes", "seven gate ramparts",
         "stepped tank squares", "clock tower crossroads",
         "cantilevered wooden balconies", "saltpetre warehouse rows"),
        ("a dawn wholesale auction", "a festival chariot street",
         "a dyers canal district", "a storytellers plaza",
         "a kite makers alley", "a drummers gate ceremony"),
        ("a founding well legend", "a twin city pact",
         "a merchant charter stone", "a lighthouse folly",
         "a poet laureate seat", "a census of crafts"),
    ),
    "sports": (
        ("a monsoon league", "a harvest close", "a torch lit",
         "a river bank", "a village pride", "a fair ground"),
        ("mud pit wrestling bout", "snake boat sprint", "stick fencing duel",
         "bullock pair race", "clay court chase game", "log lifting contest"),
        ("oiled body grips", "synchronised paddle chants",
         "woven cane shields", "bell strapped harnesses",
         "chalked boundary rings", "counted breath holds"),
        ("a champion sash parade", "a drummed points chant",
         "a captain oath lap", "a rival village wager",
         "a coach lineage title", "a dawn weigh in"),
        ("a winners granary share", "a retired champion jury",
         "a monsoon training camp", "a festival exhibition match",
         "a junior scouting day", "a trophy of horns"),
    ),
    "personalities": (
        ("a barefoot touring", "a court exiled", "a village schooled",
         "a twice jailed", "a quietly venerated", "a late celebrated"),
        ("folk balladeer", "temple sculptor", "freedom courier",
         "herbal healer", "river cartographer", "grain bank founder"),
        ("midnight border crossings", "hand set printing presses",
         "famine kitchen ledgers", "dawn riverbank recitals",
         "smuggled manuscript satchels", "village to village walks"),
        ("a thousand verse cycle", "a map of forgotten fords",
         "a school under a banyan", "a seed lending registry",
         "a repertoire of work songs", "a gallery of clay portraits"),
        ("an annual memorial lecture", "a named ferry crossing",
         "a statue facing the hills", "a scholarship of apprentices",
         "a museum room of tools", "a birthday procession"),
    ),
}

_TAILS = ("from", "rooted in", "treasured across", "emblematic of")

_MIN_BODY_STEMS = 11


def _region_quotas(regions: list[Region]) -> dict[str, int]:
    ordered = sorted(regions, key=lambda r: r.ref.slug)
    return {r.display_name: (20 if i < 16 else 19) for i, r in enumerate(ordered)}


def _make_body(rng: random.Random, category: str) -> str:
    pools = _BODY_POOLS[category]
    for _ in range(64):
        a, b, c, d, e = (rng.choice(pool) for pool in pools)
        body = f"{a} {b} of {c} known for {d} and {e}"
        if len(content_stems(body)) >= _MIN_BODY_STEMS:
            return body
    raise AssertionError(f"pools for {category} cannot reach {_MIN_BODY_STEMS} content stems")


def _make_name(rng: random.Random, category: str, used: set[str]) -> str:
    nouns = _CATEGORY_NOUNS[category]
    for _ in range(1000):
        given = rng.choice(_GIVEN_ONSETS) + rng.choice(_GIVEN_VOWELS) + rng.choice(_GIVEN_CODAS)
        name = given if not nouns else f"{given} {rng.choice(nouns)}"
        if name.lower() not in used:
            used.add(name.lower())
            return name
    raise AssertionError("name pool exhausted")


def synthetic_inventory_rows() -> list[InventoryRow]:
    """The 700-row inventory: curated rows, twins, and generated artifacts."""
    regions = region_table()
    rng = random.Random(_FIXTURE_SEED)
    rows = curated_rows() + twin_rows()

    quotas = _region_quotas(regions)
    placed: dict[str, int] = {}
    for row in rows:
        placed[row.state] = placed.get(row.state, 0) + 1

    ordered_regions = sorted(regions, key=lambda r: r.ref.slug)
    # Per-region category sequence: the category list rotated by region index,
    # cycled to the region's remaining quota.
    needs: dict[str, list[str]] = {}
    for index, region in enumerate(ordered_regions):
        remaining = quotas[region.display_name] - placed.get(region.display_name, 0)
        rotation = CATEGORIES[index % 13 :] + CATEGORIES[: index % 13]
        needs[region.display_name] = [rotation[j % 13] for j in range(remaining)]

    used_names = {row.artifact_name.lower() for row in rows}
    for category in CATEGORIES:
        # Occurrence-0 slots across regions first, then occurrence-1 slots, so
        # consecutive slots always sit in different regions and every template
        # group spans at least two regions.
        slots: list[str] = []
        for occurrence in (0, 1):
            for region in ordered_regions:
                if needs[region.display_name].count(category) > occurrence:
                    slots.append(region.display_name)
        for group in _chunk(slots):
            body = _make_body(rng, category)
            tail = rng.choice(_TAILS)
            for state in group:
                name = _make_name(rng, category, used_names)
                descriptor = f"{name} is {body}, {tail} {state}."
                rows.append(_row(state, name, category, descriptor))

    assert len(rows) == 700, f"fixture should have 700 rows, got {len(rows)}"
    return rows


def _chunk(slots: list[str]) -> list[list[str]]:
    """Groups of 2-3 slots; a trailing singleton joins the previous group."""
    groups: list[list[str]] = []
    i = 0
    while i < len(slots):
        remaining = len(slots) - i
        size = 3 if remaining >= 5 else (2 if remaining in (2, 4) else remaining)
        groups.append(slots[i : i + size])
        i += size
    if groups and len(groups[-1]) == 1:
        last = groups.pop()
        groups[-1].extend(last)
    return groups


# -- convenience builders -----------------------------------------------------


def build_curated_graph() -> CultureGraph:
    graph, diagnostics = ingest_inventory(curated_rows(), region_table())
    assert not diagnostics, diagnostics
    return graph


def build_synthetic_graph() -> CultureGraph:
    graph, diagnostics = ingest_inventory(synthetic_inventory_rows(), region_table())
    assert not diagnostics, diagnostics
    return graph


def write_fixture_files(out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    regions_path = out / "regions.csv"
    inventory_path = out / "inventory.csv"
    curated_path = out / "curated_inventory.csv"
    write_regions_csv(regions_path, region_table())
    write_inventory_csv(inventory_path, synthetic_inventory_rows())
    write_inventory_csv(curated_path, curated_rows())
    return [regions_path, inventory_path, curated_path]
