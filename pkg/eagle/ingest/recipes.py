"""
 @copyright Copyright (C) 2024 Dennis Greguhn <dev@greguhn.de>
 
 @author Dennis Greguhn <dev@greguhn.de>
 
 @license AGPL-3.0-or-later
 
 This program is free software: you can redistribute it and/or modify
 it under the terms of the GNU Affero General Public License as
 published by the Free Software Foundation, either version 3 of the
 License, or (at your option) any later version.
 
 This program is distributed in the hope that it will be useful,
 but WITHOUT ANY WARRANTY; without even the implied warranty of
 MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
 GNU Affero General Public License for more details.
 
 You should have received a copy of the GNU Affero General Public License
 along with this program.  If not, see <http://www.gnu.org/licenses/>.
"""

# Recipe scripts of the procedure videos, steps numbered from 1 in list order
RECIPES = {
	'Pinwheels': [
		'Place the tortilla on the cutting board.',
		'Scoop nut butter and spread it on the tortilla, leaving a margin at the edge.',
		'Clean the knife with a paper towel.',
		'Using the knife, scoop jelly from the jar and spread it over the nut butter.',
		'Clean the knife with a paper towel.',
		'Roll tortilla into a tight 1.5-inch thick log without squeezing out the filling',
		'Secure the roll with 5 toothpicks spaced 1 inch apart.',
		'Trim tortilla roll ends, leaving a 1/2 inch margin near the last toothpick; discard the ends.',
		'Place floss under the roll, halfway between two toothpicks, perpendicular to its length',
		'Cross floss ends over the roll and pull in opposite directions to slice.',
		'Continue slicing with floss to create 5 pinwheels.',
		'Place the pinwheels on a plate.',
	],
	'Mug Cake': [
		'Place the paper cupcake liner inside the mug.',
		'Measure 12 teaspoons of flour into the mixing bowl.',
		'Add sugar, baking powder and salt to the bowl.',
		'Whisk the dry ingredients together.',
		'Add oil, water and vanilla extract to the bowl.',
		'Whisk until the batter is smooth.',
		'Pour the batter into the lined mug.',
		'Microwave the mug for 60 seconds.',
		'Let the cake cool and remove it from the mug.',
		'Spread frosting on top of the cake.',
	],
	'Brew Coffee': [
		'Measure 12 ounces of cold water and pour it into the kettle.',
		'Turn on the kettle.',
		'Place the dripper on top of the mug.',
		'Prepare the filter and place it in the dripper.',
		'Weigh the coffee beans and grind them.',
		'Add the ground coffee to the filter cone.',
		'Check the temperature of the water.',
		'Pour a small amount of water to let the coffee bloom.',
		'Slowly pour the rest of the water over the grounds in circles.',
		'Let the coffee drain completely and remove the dripper.',
		'Discard the filter and the used grounds.',
	],
}

KITCHEN_VERBS = ['open', 'close', 'take', 'put down', 'wash', 'cut', 'pour', 'stir', 'turn on', 'turn off']
KITCHEN_NOUNS = ['drawer', 'cupboard', 'fridge', 'knife', 'tap', 'carrot', 'courgette', 'pan', 'plate', 'cutting board', 'container', 'grater']
NARRATION_TEMPLATES = [
	'#C C picks up the {noun}',
	'#C C places the {noun} on the counter',
	'#C C opens the {noun}',
	'#C C closes the {noun}',
	'#C C washes the {noun}',
	'#C C moves the {noun} with the left hand',
]
HAND_LABELS = ['right hand', 'left hand']
