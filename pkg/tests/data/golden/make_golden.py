"""Regenerate the golden benchmark fixtures (cases.jsonl + transcripts/).

The scripted responses are authored here by hand; ground-truth rows were
derived by hand from the small fixture databases (and cross-checked against
the independent brute-force reference evaluator in tests/). Run from the
repository root:

    python3 tests/data/golden/make_golden.py
"""

from __future__ import annotations

import json
from pathlib import Path

HERE = Path(__file__).parent

WEEKDAY_BAR = (
    "Visualize BAR SELECT Date_Stored, COUNT(Document_ID) "
    "FROM All_Documents GROUP BY Date_Stored BIN Date_Stored BY WEEKDAY"
)
STACKED_BAR = (
    "Visualize STACKED BAR SELECT O.order_date, SUM(O.total_amount), "
    "C.customer_type FROM Orders O JOIN Customers C "
    "ON O.customer_id = C.customer_id GROUP BY C.customer_type "
    "BIN O.order_date BY MONTH"
)
PSYCHOLOGY_LINE = (
    "Visualize LINE SELECT S.year, COUNT(S.year) FROM course C "
    "JOIN section S ON C.course_id = S.course_id "
    "WHERE C.dept_name = 'Psychology' BIN S.year BY YEAR"
)
FAULTY_FIG2 = (
    "Visualize BAR SELECT T1.product_name, COUNT(T2.complaint_id) "
    "FROM Products T1 JOIN Complaints T2 ON T1.product_id = T2.product_id"
)


def processor(filtered: dict, new_schema: str, explanation: str, label: str) -> str:
    return (
        "[Filtered Schema]\n"
        + json.dumps(filtered, indent=2)
        + "\n\n[New Schema]\n"
        + new_schema
        + "\n\n[Augmented Explanation]\n"
        + explanation
        + "\n\n[Classification]\n"
        + label
        + "\n"
    )


def composer(vql: str) -> str:
    return (
        "Sub task 1: choose the type and sketch.\n"
        "Sub task 2: fill the data components.\n"
        "Sub task 3: assemble the final sentence.\n"
        f"Final VQL:\n{vql}\n"
    )


def correction(vql: str, note: str) -> str:
    return f"[Explanation]\n{note}\n\n[Corrected VQL]\n{vql}\n"


ZERO_MONTHS = [
    ["March", 0.0, "VIP"],
    *[
        [month, 0.0, group]
        for month in (
            "April", "May", "June", "July", "August",
            "September", "October", "November", "December",
        )
        for group in ("Regular", "VIP")
    ],
]

CASES = [
    {
        "case": {
            "case_id": "weekday_bar",
            "db_id": "cre_Doc_Tracking_DB",
            "query": "How many documents are stored? Bin the store date by "
            "weekday in a bar chart.",
            "hardness": "hard",
            "ground_truth": {
                "chart_types": ["bar"],
                "rows": [
                    ["Monday", 2], ["Tuesday", 1], ["Wednesday", 0],
                    ["Thursday", 0], ["Friday", 1], ["Saturday", 1],
                    ["Sunday", 1],
                ],
                "channels_pinned": False,
                "sort": None,
            },
        },
        "responses": [
            processor(
                {"All_Documents": ["Document_ID", "Date_Stored"]},
                "# Table: All_Documents\n[\n  (Document_ID, And This is a id type column),\n  (Date_Stored, Value examples: ['2023-01-16', '2023-01-17', '2023-01-20'].)\n]",
                "A single table; count documents per weekday of Date_Stored.",
                "SINGLE",
            ),
            composer(WEEKDAY_BAR),
        ],
    },
    {
        "case": {
            "case_id": "stacked_month",
            "db_id": "retail_orders",
            "query": "Show the total order amount for each customer type by "
            "month in a stacked bar chart.",
            "hardness": "extra_hard",
            "ground_truth": {
                "chart_types": ["stacked bar"],
                "rows": [
                    ["January", 100.0, "Regular"], ["January", 200.0, "VIP"],
                    ["February", 450.0, "Regular"], ["February", 250.0, "VIP"],
                    ["March", 120.0, "Regular"],
                    *ZERO_MONTHS,
                ],
                "channels_pinned": False,
                "sort": None,
            },
        },
        "responses": [
            processor(
                {
                    "Orders": ["order_id", "customer_id", "order_date", "total_amount"],
                    "Customers": ["customer_id", "customer_type"],
                },
                "# Table: Orders\n[\n  (order_id, And This is a id type column),\n  (customer_id, And This is a id type column),\n  (order_date, Value examples: ['2023-01-15', '2023-01-20', '2023-02-10'].),\n  (total_amount, Value examples: [100.00, 200.00, 150.00, 300.00, 250.00, 120.00].)\n]\n# Table: Customers\n[\n  (customer_id, And This is a id type column),\n  (customer_type, Value examples: ['Regular', 'VIP'].)\n]",
                "Two tables joined on customer_id; sum amounts per month and type.",
                "MULTIPLE",
            ),
            composer(STACKED_BAR),
        ],
    },
    {
        "case": {
            "case_id": "psych_line",
            "db_id": "university_course",
            "query": "Find the number of courses offered by Psychology "
            "department in each year with a line chart.",
            "hardness": "hard",
            "ground_truth": {
                "chart_types": ["line"],
                "rows": [[2002, 3], [2010, 1]],
                "channels_pinned": False,
                "sort": None,
            },
        },
        "responses": [
            processor(
                {
                    "course": ["course_id", "dept_name"],
                    "section": ["course_id", "year"],
                },
                "# Table: course\n[\n  (course_id, And This is a id type column),\n  (dept_name, Value examples: ['Psychology', 'Comp. Sci.'].)\n]\n# Table: section\n[\n  (course_id, And This is a id type column),\n  (year, Value examples: [2002, 2010].)\n]",
                "Join course and section, filter Psychology, bin year by YEAR.",
                "MULTIPLE",
            ),
            composer(PSYCHOLOGY_LINE),
        ],
    },
    {
        "case": {
            "case_id": "sex_pie",
            "db_id": "dorm_1",
            "query": "Show the number of students for each sex in a pie chart.",
            "hardness": "easy",
            "ground_truth": {
                "chart_types": ["pie"],
                "rows": [["F", 3], ["M", 4]],
                "channels_pinned": False,
                "sort": None,
            },
        },
        "responses": [
            processor(
                {"Student": ["stuid", "sex"]},
                "# Table: Student\n[\n  (stuid, And This is a id type column),\n  (sex, Value examples: ['M', 'F'].)\n]",
                "One table; count students per sex.",
                "SINGLE",
            ),
            composer("Visualize PIE SELECT sex, COUNT(stuid) FROM Student GROUP BY sex"),
        ],
    },
    {
        "case": {
            "case_id": "percent_scatter",
            "db_id": "basketball",
            "query": "Show the relation between acc_percent and "
            "all_games_percent in a scatter chart.",
            "hardness": "easy",
            "ground_truth": {
                "chart_types": ["scatter"],
                "rows": [
                    [0.5, 0.52], [0.6, 0.55], [0.65, 0.6],
                    [0.75, 0.68], [0.8, 0.7],
                ],
                "channels_pinned": True,
                "sort": None,
            },
        },
        "responses": [
            processor(
                {"basketball_match": ["team_id", "acc_percent", "all_games_percent"]},
                "# Table: basketball_match\n[\n  (team_id, And This is a id type column),\n  (acc_percent, Value examples: [0.8, 0.75, 0.6, 0.65, 0.5].),\n  (all_games_percent, Value examples: [0.7, 0.68, 0.55, 0.6, 0.52].)\n]",
                "One table; plot the two percentages against each other.",
                "SINGLE",
            ),
            composer(
                "Visualize SCATTER SELECT acc_percent, all_games_percent "
                "FROM basketball_match"
            ),
        ],
    },
    {
        "case": {
            "case_id": "percent_grouped_scatter",
            "db_id": "basketball",
            "query": "Show the relation between acc_percent and "
            "all_games_percent for each acc_home using a grouped scatter chart.",
            "hardness": "easy",
            "ground_truth": {
                "chart_types": ["grouped scatter"],
                "rows": [
                    [0.5, 0.52, "East"], [0.6, 0.55, "South"],
                    [0.65, 0.6, "South"], [0.75, 0.68, "East"],
                    [0.8, 0.7, "East"],
                ],
                "channels_pinned": True,
                "sort": None,
            },
        },
        "responses": [
            processor(
                {
                    "basketball_match": [
                        "team_id", "acc_percent", "all_games_percent", "acc_home"
                    ]
                },
                "# Table: basketball_match\n[\n  (team_id, And This is a id type column),\n  (acc_percent, Value examples: [0.8, 0.75, 0.6, 0.65, 0.5].),\n  (all_games_percent, Value examples: [0.7, 0.68, 0.55, 0.6, 0.52].),\n  (acc_home, Value examples: ['East', 'South'].)\n]",
                "One table; one point per team, grouped by acc_home.",
                "SINGLE",
            ),
            composer(
                "Visualize GROUPED SCATTER SELECT acc_percent, "
                "all_games_percent, acc_home FROM basketball_match"
            ),
        ],
    },
    {
        "case": {
            "case_id": "avg_grouped_line_day",
            "db_id": "retail_orders",
            "query": "Show the average order amount per day for each customer "
            "type with a grouped line chart.",
            "hardness": "extra_hard",
            "ground_truth": {
                "chart_types": ["grouped line"],
                "rows": [
                    ["2023-01-15", 100.0, "Regular"],
                    ["2023-01-20", 200.0, "VIP"],
                    ["2023-02-10", 150.0, "Regular"],
                    ["2023-02-14", 300.0, "Regular"],
                    ["2023-02-20", 250.0, "VIP"],
                    ["2023-03-05", 120.0, "Regular"],
                ],
                "channels_pinned": False,
                "sort": None,
            },
        },
        "responses": [
            processor(
                {
                    "Orders": ["order_id", "customer_id", "order_date", "total_amount"],
                    "Customers": ["customer_id", "customer_type"],
                },
                "# Table: Orders\n[\n  (order_id, And This is a id type column),\n  (customer_id, And This is a id type column),\n  (order_date, Value examples: ['2023-01-15', '2023-01-20', '2023-02-10'].),\n  (total_amount, Value examples: [100.00, 200.00, 150.00, 300.00, 250.00, 120.00].)\n]\n# Table: Customers\n[\n  (customer_id, And This is a id type column),\n  (customer_type, Value examples: ['Regular', 'VIP'].)\n]",
                "Join the tables; average the amount per day and customer type.",
                "MULTIPLE",
            ),
            composer(
                "Visualize GROUPED LINE SELECT O.order_date, "
                "AVG(O.total_amount), C.customer_type FROM Orders O "
                "JOIN Customers C ON O.customer_id = C.customer_id "
                "GROUP BY C.customer_type BIN O.order_date BY DAY"
            ),
        ],
    },
    {
        "case": {
            "case_id": "city_bar_desc",
            "db_id": "dorm_1",
            "query": "How many students come from each city code? Show a bar "
            "chart and sort Y in desc order.",
            "hardness": "medium",
            "ground_truth": {
                "chart_types": ["bar"],
                "rows": [
                    ["PIT", 2], ["BAL", 1], ["HKG", 1],
                    ["NYC", 1], ["PHL", 1], ["WAS", 1],
                ],
                "channels_pinned": False,
                "sort": {"channel": "y", "direction": "desc"},
            },
        },
        "responses": [
            processor(
                {"Student": ["stuid", "city code"]},
                "# Table: Student\n[\n  (stuid, And This is a id type column),\n  (city code, Value examples: ['PIT', 'BAL', 'NYC', 'WAS', 'HKG', 'PHL'].)\n]",
                "One table; count students per city code, largest first.",
                "SINGLE",
            ),
            composer(
                'Visualize BAR SELECT "city code", COUNT(stuid) FROM Student '
                'GROUP BY "city code" ORDER BY Y DESC'
            ),
        ],
    },
    {
        "case": {
            "case_id": "smith_hall_pie",
            "db_id": "dorm_1",
            "query": "Find the first name of students who are living in the "
            "Smith Hall, and count them by a pie chart",
            "hardness": "medium",
            "ground_truth": {
                "chart_types": ["pie"],
                "rows": [["Michael", 1]],
                "channels_pinned": False,
                "sort": None,
            },
        },
        "responses": [
            processor(
                {
                    "Student": ["stuid", "fname"],
                    "Dorm": ["dormid", "dorm name"],
                    "Lives_in": ["stuid", "dormid"],
                },
                "# Table: Student\n[\n  (stuid, And This is a id type column),\n  (fname, Value examples: ['Eric', 'Lisa', 'David', 'Sarah', 'Paul', 'Michael'].)\n]\n# Table: Dorm\n[\n  (dormid, And This is a id type column),\n  (dorm name, Value examples: ['Anonymous Donor Hall', 'Bud Jones Hall', 'Dorm-plex 2000', 'Fawlty Towers', 'Grad Student Asylum', 'Smith Hall'].)\n]\n# Table: Lives_in\n[\n  (stuid, And This is a id type column),\n  (dormid, And This is a id type column)\n]",
                "The Lives_in table bridges Student and Dorm; filter on the "
                "dorm name and count first names.",
                "MULTIPLE",
            ),
            composer(
                "Visualize PIE SELECT S.fname, COUNT(S.stuid) FROM Student S "
                "JOIN Lives_in L ON S.stuid = L.stuid "
                "JOIN Dorm D ON L.dormid = D.dormid "
                "WHERE D.\"dorm name\" = 'Smith Hall' GROUP BY S.fname"
            ),
        ],
    },
    {
        "case": {
            "case_id": "complaints_refined_bar",
            "db_id": "product_complaints",
            "query": "List the name of all products along with the number of "
            "complaints that they have received in a bar chart.",
            "hardness": "medium",
            "ground_truth": {
                "chart_types": ["bar"],
                "rows": [["Book", 1], ["Chocolate", 3]],
                "channels_pinned": False,
                "sort": None,
            },
        },
        "responses": [
            processor(
                {
                    "Products": ["product_id", "product_name"],
                    "Complaints": ["complaint_id", "product_id"],
                },
                "# Table: Products\n[\n  (product_id, And This is a id type column),\n  (product_name, Value examples: ['Chocolate', 'Book', 'Laptop'].)\n]\n# Table: Complaints\n[\n  (complaint_id, And This is a id type column),\n  (product_id, And This is a id type column)\n]",
                "Join products to complaints on product_id and count per name.",
                "MULTIPLE",
            ),
            composer(FAULTY_FIG2),
            correction(
                FAULTY_FIG2 + " GROUP BY T1.product_name",
                "COUNT is used while product_name stays bare, so the sentence "
                "needs GROUP BY product_name for proper data aggregation.",
            ),
        ],
    },
]


def main() -> None:
    transcripts = HERE / "transcripts"
    transcripts.mkdir(exist_ok=True)
    with (HERE / "cases.jsonl").open("w", encoding="utf-8") as fh:
        for entry in CASES:
            fh.write(json.dumps(entry["case"]) + "\n")
    for entry in CASES:
        case_id = entry["case"]["case_id"]
        with (transcripts / f"{case_id}.jsonl").open("w", encoding="utf-8") as fh:
            for i, response in enumerate(entry["responses"]):
                fh.write(json.dumps({"match": i, "response": response}) + "\n")
    print(f"wrote {len(CASES)} cases and transcripts under {HERE}")


if __name__ == "__main__":
    main()
