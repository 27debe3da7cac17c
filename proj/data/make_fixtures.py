#!/usr/bin/env python3
# Copyright 2026 The travelmas Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the bundled sandbox, task file and scripted cassettes.

Usage: python3 data/make_fixtures.py   (writes next to this file)

The cassettes script three experiments over the same ten tasks:
  fixed/          experts speak once each, then compiler and critic
  orchestrated/   orchestrator-led; revisits repair the conflicts fixed mode misses
  single/         one agent with every tool
Request digests are left empty, so replay only checks the order of calls per role.
"""

import csv
import json
import math
from pathlib import Path

HERE = Path(__file__).resolve().parent

FLIGHTS = [
    # number, origin, destination, dep, arr, minutes, price, date
    ("F1001", "New York", "London", "08:00", "20:00", 420, 610, "2022-10-01"),
    ("F1002", "New York", "London", "18:30", "06:30", 420, 320, "2022-10-01"),
    ("F1007", "New York", "London", "09:15", "21:15", 420, 355, "2022-10-02"),
    ("F1003", "London", "New York", "10:00", "13:00", 480, 450, "2022-10-03"),
    ("F1004", "London", "New York", "16:45", "19:45", 480, 300, "2022-10-03"),
    ("F2001", "London", "Rome", "07:30", "11:00", 150, 150, "2022-10-05"),
    ("F2003", "Rome", "London", "12:00", "14:00", 180, 160, "2022-10-05"),
    ("F2002", "Rome", "London", "15:00", "17:00", 180, 140, "2022-10-07"),
    ("F2004", "London", "Rome", "09:00", "12:30", 150, 155, "2022-10-07"),
    ("F3001", "New York", "Rome", "17:00", "07:30", 570, 700, "2022-10-10"),
    ("F3003", "London", "New York", "11:00", "14:00", 480, 480, "2022-10-10"),
    ("F3002", "Rome", "New York", "10:30", "14:30", 600, 680, "2022-10-12"),
    ("F3004", "New York", "London", "19:00", "07:00", 420, 470, "2022-10-12"),
    ("F3005", "Rome", "New York", "09:45", "13:45", 600, 720, "2022-10-15"),
    ("F3006", "New York", "Rome", "18:15", "08:45", 570, 690, "2022-10-17"),
    ("F1005", "New York", "London", "08:30", "20:30", 420, 400, "2022-10-20"),
    ("F2005", "London", "Rome", "06:50", "10:20", 150, 130, "2022-10-20"),
    ("F1006", "London", "New York", "12:10", "15:10", 480, 410, "2022-10-22"),
    ("F2006", "Rome", "London", "20:00", "22:00", 180, 135, "2022-10-22"),
    ("F3007", "New York", "Rome", "16:20", "06:50", 570, 650, "2022-10-25"),
    ("F3008", "Rome", "New York", "11:40", "15:40", 600, 640, "2022-10-27"),
]

HOTELS = [
    # name, city, price, room type, house rules, minimum nights, maximum occupancy
    ("Kensington Garden Flat", "London", 220, "Entire home/apt", "No parties;No smoking", 1, 2),
    ("Camden Shared Loft", "London", 60, "Shared room", "No pets", 1, 1),
    ("Southwark Rooms", "London", 140, "Private room", "No smoking", 2, 2),
    ("Mayfair Suites", "London", 300, "Private room", "No pets;No visitors", 1, 2),
    ("Trastevere Apartment", "Rome", 180, "Entire home/apt", "No parties", 1, 3),
    ("Termini Budget Room", "Rome", 70, "Private room", "No smoking;No pets", 1, 2),
    ("Monti Guesthouse", "Rome", 95, "Private room", "No parties", 2, 2),
    ("Midtown Grand Hotel", "New York", 350, "Private room", "No parties;No pets", 1, 2),
    ("Brooklyn Budget Inn", "New York", 120, "Private room", "No smoking", 1, 2),
    ("Harlem Shared Hostel", "New York", 45, "Shared room", "No visitors", 1, 1),
]

RESTAURANTS = [
    # name, city, cuisines, average cost, rating
    ("Mr Toasties", "London", "Vegetarian;Cafe", 95, 4.6),
    ("The Thames Grill", "London", "British;Steakhouse", 40, 4.1),
    ("Golden Dragon", "London", "Chinese", 25, 3.9),
    ("Borough Bites", "London", "Cafe;Bakery", 15, 4.3),
    ("Trattoria Da Enzo", "Rome", "Italian", 30, 4.7),
    ("Pizzeria Roma", "Rome", "Pizza;Italian", 18, 4.2),
    ("Dragon Palace Roma", "Rome", "Chinese", 22, 3.8),
    ("Joe's Diner", "New York", "American", 20, 4.0),
    ("Empire Noodles", "New York", "Chinese;Asian", 18, 4.4),
    ("Bagel Corner", "New York", "Cafe;Bakery", 12, 4.5),
]

ATTRACTIONS = [
    ("British Museum", "London", "Great Russell St, London WC1B 3DG"),
    ("Tower of London", "London", "London EC3N 4AB"),
    ("Hyde Park", "London", "London W2 2UH"),
    ("Tate Modern", "London", "Bankside, London SE1 9TG"),
    ("London Eye", "London", "Riverside Building, London SE1 7PB"),
    ("Colosseum", "Rome", "Piazza del Colosseo, 1, 00184 Roma"),
    ("Pantheon", "Rome", "Piazza della Rotonda, 00186 Roma"),
    ("Trevi Fountain", "Rome", "Piazza di Trevi, 00187 Roma"),
    ("Central Park", "New York", "New York, NY 10024"),
    ("Statue of Liberty", "New York", "Liberty Island, New York, NY 10004"),
]

MEALS = {
    "London": ["The Thames Grill", "Golden Dragon", "Borough Bites"],
    "Rome": ["Trattoria Da Enzo", "Pizzeria Roma", "Dragon Palace Roma"],
    "New York": ["Joe's Diner", "Empire Noodles", "Bagel Corner"],
}
SIGHTS = {
    "London": ["British Museum", "Tower of London"],
    "Rome": ["Colosseum", "Pantheon"],
    "New York": ["Central Park", "Statue of Liberty"],
}

MONTHS = {"10": "October"}


def task(tid, org, dest, start_day, people, budget, **local):
    dates = ["2022-10-%02d" % (start_day + i) for i in range(3)]
    constraint = {"house rule": None, "cuisine": None, "room type": None, "transportation": None}
    constraint.update({k.replace("_", " "): v for k, v in local.items()})
    who = "1 person" if people == 1 else "%d people" % people
    extra = []
    if constraint["cuisine"]:
        extra.append("We would like to try %s food." % " and ".join(constraint["cuisine"]))
    if constraint["room type"]:
        extra.append("We want a %s." % constraint["room type"])
    if constraint["house rule"]:
        extra.append("Our accommodation must allow %s." % constraint["house rule"])
    query = (
        "Please plan a 3-day trip for %s from %s to %s, from October %d to October %d, 2022, "
        "with a budget of $%s. %s" % (who, org, dest, start_day, start_day + 2, format(budget, ","), " ".join(extra))
    ).strip()
    return {
        "task_id": tid,
        "query": query,
        "org": org,
        "dest": dest,
        "days": 3,
        "visiting_city_number": 1,
        "date": dates,
        "people_number": people,
        "local_constraint": constraint,
        "budget": budget,
    }


TASKS = [
    task("t01", "New York", "London", 1, 1, 1500),
    task("t02", "New York", "London", 1, 2, 2400, cuisine=["Vegetarian"]),
    task("t03", "London", "Rome", 5, 1, 900, room_type="entire room"),
    task("t04", "Rome", "London", 5, 2, 1500, house_rule="pets"),
    task("t05", "New York", "Rome", 10, 1, 1800, cuisine=["Italian"]),
    task("t06", "London", "New York", 10, 1, 1600),
    task("t07", "Rome", "New York", 15, 1, 1900, room_type="private room"),
    task("t08", "New York", "London", 20, 3, 5000),
    task("t09", "London", "Rome", 20, 1, 700, cuisine=["Chinese", "Pizza"]),
    task("t10", "New York", "Rome", 25, 2, 3200, house_rule="smoking"),
]


def flight(number):
    return next(f for f in FLIGHTS if f[0] == number)


def hotel(name):
    return next(h for h in HOTELS if h[0] == name)


def restaurant(name):
    return next(r for r in RESTAURANTS if r[0] == name)


class Itinerary:
    """Three-day A -> B -> A itinerary with named choices."""

    def __init__(self, t, out, ret, stay, meals=None, sights=None):
        self.t, self.out, self.ret, self.stay = t, out, ret, stay
        dest = t["dest"]
        self.meals = meals or MEALS[dest]
        self.sights = sights or SIGHTS[dest]

    def cost(self):
        people = self.t["people_number"]
        h = hotel(self.stay)
        rooms = math.ceil(people / h[6])
        return (flight(self.out)[6] + flight(self.ret)[6]) * people + h[2] * rooms * 2 + sum(
            restaurant(m)[3] for m in self.meals
        ) * people

    def text(self, preface="Here is the final itinerary."):
        a, b = self.t["org"], self.t["dest"]
        d1, l2, d2 = self.meals
        s1, s2 = self.sights
        days = [
            [("Current City", "from %s to %s" % (a, b)), ("Transportation", "Flight Number: %s, from %s to %s" % (self.out, a, b)),
             ("Breakfast", "-"), ("Attraction", "%s, %s" % (s1, b)), ("Lunch", "-"), ("Dinner", "%s, %s" % (d1, b)),
             ("Accommodation", "%s, %s" % (self.stay, b))],
            [("Current City", b), ("Transportation", "-"), ("Breakfast", "-"), ("Attraction", "%s, %s" % (s2, b)),
             ("Lunch", "%s, %s" % (l2, b)), ("Dinner", "%s, %s" % (d2, b)), ("Accommodation", "%s, %s" % (self.stay, b))],
            [("Current City", "from %s to %s" % (b, a)), ("Transportation", "Flight Number: %s, from %s to %s" % (self.ret, b, a)),
             ("Breakfast", "-"), ("Attraction", "-"), ("Lunch", "-"), ("Dinner", "-"), ("Accommodation", "-")],
        ]
        lines = [preface, ""]
        for i, fields in enumerate(days, 1):
            lines.append("Day %d:" % i)
            lines += ["%s: %s" % kv for kv in fields]
            lines.append("")
        return "\n".join(lines).rstrip() + "\n"


class Script:
    def __init__(self):
        self.entries = []

    def say(self, role, text):
        self.entries.append({"role": role, "request_digest": "", "response_text": text})

    def write(self, path):
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            for e in self.entries:
                f.write(json.dumps(e, ensure_ascii=False) + "\n")


def money(x):
    return "$%d" % x


def transport_turn(s, t, out, ret, search=True):
    a, b, dates = t["org"], t["dest"], t["date"]
    if search:
        s.say("TransportExpert", "Let me look up the flights.\nflight_search(%s, %s, %s)\nflight_search(%s, %s, %s)"
              % (a, b, dates[0], b, a, dates[2]))
    fo, fr = flight(out), flight(ret)
    s.say("TransportExpert", "Transportation: take %s from %s to %s on %s (%s per person, departs %s) and return on %s "
          "with %s (%s per person, departs %s)." % (out, a, b, dates[0], money(fo[6]), fo[3], dates[2], ret,
                                                   money(fr[6]), fr[3]))


def hotel_turn(s, t, stay, search=True):
    b = t["dest"]
    if search:
        s.say("HotelExpert", "hotel_search(%s)" % b)
    h = hotel(stay)
    s.say("HotelExpert", "Accommodation: %s in %s, %s, %s per night, minimum %d night(s), up to %d guests. House rules: %s. "
          "Booked for the nights of %s and %s." % (h[0], b, h[3], money(h[2]), h[5], h[6], h[4].replace(";", "; "),
                                                    t["date"][0], t["date"][1]))


def restaurant_turn(s, t, meals, note=""):
    b = t["dest"]
    s.say("RestaurantExpert", "resturant_search(%s)" % b)
    desc = "; ".join("%s (%s, %s per person)" % (m, restaurant(m)[2].replace(";", ", "), money(restaurant(m)[3]))
                     for m in meals)
    s.say("RestaurantExpert", "Meals: day 1 dinner, day 2 lunch and day 2 dinner at %s. %s" % (desc, note))


def attraction_turn(s, t):
    b = t["dest"]
    s.say("AttractionExpert", "attraction_search(%s)" % b)
    s1, s2 = SIGHTS[b]
    s.say("AttractionExpert", "Attractions: %s on day 1 and %s on day 2, both in %s." % (s1, s2, b))


def decide(s, reflection, nxt):
    s.say("Orchestrator", "REFLECTION: %s\nNEXT: %s" % (reflection, nxt))


def endgame(s, plan, critic_issue=None, draft=None):
    if draft is not None:
        s.say("PlanCompiler", draft.text("Draft itinerary."))
        s.say("PlanCritic", "ISSUES: %s" % critic_issue)
        s.say("PlanCompiler", plan.text("Revised itinerary."))
    else:
        s.say("PlanCompiler", plan.text())
    s.say("PlanCritic", "APPROVED")


def by_id(tid):
    return next(t for t in TASKS if t["task_id"] == tid)


# Per-task choices: (out, ret, hotel, meals)
CHOICES = {
    "t01": ("F1002", "F1004", "Kensington Garden Flat", None),
    "t02": ("F1002", "F1004", "Kensington Garden Flat", ["The Thames Grill", "Golden Dragon", "Mr Toasties"]),
    "t03": ("F2001", "F2002", "Trastevere Apartment", None),
    "t04": ("F2003", "F2004", "Southwark Rooms", None),
    "t05": ("F3001", "F3002", "Termini Budget Room", None),
    "t06": ("F3003", "F3004", "Brooklyn Budget Inn", None),
    "t07": ("F3005", "F3006", "Brooklyn Budget Inn", None),
    "t08": ("F1005", "F1006", "Kensington Garden Flat", None),
    "t09": ("F2005", "F2006", "Termini Budget Room", None),
    "t10": ("F3007", "F3008", "Monti Guesthouse", None),
}

# Choices the fixed workflow settles on where they differ from the final ones.
FIXED_FIRST = {
    "t02": {"out": "F1001", "ret": "F1003"},
    "t04": {"stay": "Mayfair Suites"},
    "t07": {"stay": "Midtown Grand Hotel"},
}


def itinerary(tid, **override):
    out, ret, stay, meals = CHOICES[tid]
    args = {"out": out, "ret": ret, "stay": stay, "meals": meals}
    args.update(override)
    return Itinerary(by_id(tid), **args)


def fixed_script(tid):
    t = by_id(tid)
    it = itinerary(tid, **FIXED_FIRST.get(tid, {}))
    s = Script()
    transport_turn(s, t, it.out, it.ret)
    hotel_turn(s, t, it.stay)
    restaurant_turn(s, t, it.meals)
    attraction_turn(s, t)
    if tid == "t05":
        # Critic catches a repeated restaurant in the draft.
        b = t["dest"]
        draft = Itinerary(t, it.out, it.ret, it.stay, meals=[MEALS[b][0], MEALS[b][1], MEALS[b][0]])
        endgame(s, it, "Trattoria Da Enzo is used for two meals; pick a different restaurant for day 2 dinner.", draft)
    else:
        endgame(s, it)
    return s


def orchestrated_script(tid):
    t = by_id(tid)
    final = itinerary(tid)
    first = itinerary(tid, **FIXED_FIRST.get(tid, {}))
    s = Script()
    budget = t["budget"]
    decide(s, "Nothing is planned yet. Flights fix the dates and the route, so transportation goes first.",
           "TransportExpert")
    transport_turn(s, t, first.out, first.ret)
    if tid == "t09":
        s.say("Orchestrator", "The hotel expert should go next.")  # unparseable; the retry fixes it
    decide(s, "Flights are chosen. The traveler needs a place to stay.", "HotelExpert")
    hotel_turn(s, t, first.stay)

    if tid == "t06":
        # Never hands off: the conversation is cut off at the step limit.
        decide(s, "Meals are still open.", "RestaurantExpert")
        restaurant_turn(s, t, final.meals)
        decide(s, "Attractions are still open.", "AttractionExpert")
        attraction_turn(s, t)
        for k in range(2):
            for role in ("TransportExpert", "HotelExpert", "RestaurantExpert", "AttractionExpert"):
                decide(s, "Double-checking the %s choices before handing off." % role.replace("Expert", "").lower(), role)
                s.say(role, "My earlier recommendation stands; nothing to change.")
        return s

    if tid == "t04":
        decide(s, "The request requires a hotel that allows pets, but Mayfair Suites has the rule No pets. "
                  "The hotel expert must pick another accommodation.", "HotelExpert")
        hotel_turn(s, t, final.stay)

    note = ""
    if tid == "t02":
        note = ("Mr Toasties is the only vegetarian restaurant in London; with the current flights the total is about "
                + money(first.cost()) + ", over the " + money(budget) + " budget.")
    decide(s, "Transportation and accommodation are settled. Meals come next.", "RestaurantExpert")
    restaurant_turn(s, t, final.meals, note)

    if tid == "t02":
        decide(s, "Mr Toasties is required for the vegetarian constraint and cannot be swapped, but the flights chosen "
                  "earlier push the total over the budget. The transportation expert should find cheaper flights.",
               "TransportExpert")
        transport_turn(s, t, final.out, final.ret)
    if tid == "t07":
        decide(s, "Midtown Grand Hotel at $350 per night pushes the total to " + money(first.cost()) +
               ", over the " + money(budget) + " budget. The hotel expert should find a cheaper private room.",
               "HotelExpert")
        hotel_turn(s, t, final.stay)

    decide(s, "Only attractions remain.", "AttractionExpert")
    attraction_turn(s, t)
    decide(s, "Every domain is covered and the choices are consistent with the constraints.", "FINISH")
    endgame(s, final)
    return s


def single_script(tid):
    t = by_id(tid)
    a, b, dates = t["org"], t["dest"], t["date"]
    s = Script()
    calls = "\n".join([
        "Thought: I need flights, accommodation, restaurants and attractions.",
        "flight_search(%s, %s, %s)" % (a, b, dates[0]),
        "flight_search(%s, %s, %s)" % (b, a, dates[2]),
        "hotel_search(%s)" % b,
        "resturant_search(%s)" % b,
        "attraction_search(%s)" % b,
    ])
    if tid == "t10":
        # Keeps searching and never writes a plan.
        for _ in range(12):
            s.say("SingleAgent", calls)
        return s
    s.say("SingleAgent", calls)
    if tid in ("t01", "t03", "t05", "t09"):
        it = itinerary(tid)
    elif tid == "t02":
        it = itinerary(tid, out="F1001", ret="F1003")
    elif tid == "t04":
        it = itinerary(tid, stay="Mayfair Suites")
    elif tid == "t07":
        it = itinerary(tid, stay="Midtown Grand Hotel")
    elif tid == "t08":
        it = itinerary(tid)
    elif tid == "t06":
        it = itinerary(tid, out="F3999", meals=["Times Square Bistro", "Empire Noodles", "Bagel Corner"])
    s.say("SingleAgent", "I have gathered enough information, but let me double-check the budget first.")
    s.say("SingleAgent", it.text())
    return s


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def main():
    sb = HERE / "sandbox"
    sb.mkdir(exist_ok=True)
    write_csv(sb / "flights.csv", ["flight_number", "origin_city", "destination_city", "departure_time", "arrival_time",
                                   "duration_min", "price", "date"], FLIGHTS)
    write_csv(sb / "hotels.csv", ["name", "city", "price_per_night", "room_type", "house_rules", "minimum_nights",
                                  "maximum_occupancy"], HOTELS)
    write_csv(sb / "restaurants.csv", ["name", "city", "cuisines", "average_cost", "rating"], RESTAURANTS)
    write_csv(sb / "attractions.csv", ["name", "city", "address"], ATTRACTIONS)

    with open(HERE / "tasks.jsonl", "w") as f:
        for t in TASKS:
            f.write(json.dumps(t) + "\n")

    # Budget sanity for the seeded conflicts.
    assert itinerary("t02", **FIXED_FIRST["t02"]).cost() > by_id("t02")["budget"] >= itinerary("t02").cost()
    assert itinerary("t07", **FIXED_FIRST["t07"]).cost() > by_id("t07")["budget"] >= itinerary("t07").cost()
    for tid in CHOICES:
        assert itinerary(tid).cost() <= by_id(tid)["budget"], tid

    for tid in CHOICES:
        fixed_script(tid).write(HERE / "cassettes" / "fixed" / (tid + ".jsonl"))
        orchestrated_script(tid).write(HERE / "cassettes" / "orchestrated" / (tid + ".jsonl"))
        single_script(tid).write(HERE / "cassettes" / "single" / (tid + ".jsonl"))


if __name__ == "__main__":
    main()
