from salem_lp.factory.recipe_factory import RecipeFactory, RecipeKinds

__all__ = ['RecipeFactory', 'RecipeKinds']
